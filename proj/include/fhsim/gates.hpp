// Copyright 2026 The fhsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FHSIM_GATES_HPP
#define FHSIM_GATES_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fhsim/placed_gate.hpp"

namespace fhsim::gates {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using cxd = std::complex<double>;

// Thrown when a CPHASE angle cannot be synthesized from the native gate.
class InfeasibleDecomposition : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The five angles of an excitation-number-conserving two-qubit gate.
// theta is the iSWAP angle in [0, pi/2]; phi the controlled phase; zeta, chi,
// gamma are single-qubit phase angles. All reported mod 2pi in (-pi, pi].
struct NcGateParams {
    double theta = 0.0;
    double zeta = 0.0;
    double chi = 0.0;
    double gamma = 0.0;
    double phi = 0.0;

    void validate() const;
    NcGateParams canonical() const;
};

struct NativeGateParams {
    double vartheta = 0.783;
    double varphi = 0.138;

    void validate() const;
};

inline NativeGateParams ideal_native() { return {M_PI / 4, 0.0}; }

double wrap_angle(double a);  // to (-pi, pi]

// Single-qubit primitives. rz(z) = diag(1, e^{iz}).
Matrix2cd rz(double z);
Matrix2cd rx(double xi);  // exp(-i xi X / 2)
Matrix2cd pauli_x();
Matrix2cd pauli_z();

// Two-qubit gate set; basis order |q1 q2> = |00>,|01>,|10>,|11>.
Matrix4cd nc_gate(const NcGateParams& p);
Matrix4cd nc_gate_power(const NcGateParams& p, long n);
Matrix4cd k_gate(double theta);
Matrix4cd cphase(double phi);
Matrix4cd givens(double theta);
Matrix4cd fsim(double vartheta, double varphi);  // exp(-i vt (XX+YY)/2 - i vp ZZ/4)
Matrix4cd iswap();
Matrix4cd rz2(double z1, double z2);
Matrix4cd native_gate(const NativeGateParams& p);  // K(vt) CPHASE(vp)

// sin(n w)/sin(w), continued through sin(w) = 0 by the Chebyshev recurrence.
double lambda_n(long n, double omega);

// min over global phase of the max-entry difference; exact 0 for matrices
// equal up to a phase, an upper bound otherwise.
double unitary_distance(const Matrix4cd& u, const Matrix4cd& v);

// A two-native-gate realization of one logical two-qubit gate. gate_sequence
// is in application order on abstract qubits (q0, q1) = (0, 1); replay()
// multiplies it out (including global_phase) for verification.
struct DecompositionPlan {
    double alpha = 0.0;
    double xi1 = 0.0;
    double xi2 = 0.0;
    std::array<double, 2> residual_z = {0.0, 0.0};
    std::vector<std::vector<PlacedGate>> gate_sequence;  // frames, applied in order
    std::complex<double> global_phase = 1.0;

    Matrix4cd replay() const;
    int native_count() const;
};

DecompositionPlan decompose_k(double theta, const NativeGateParams& native);
DecompositionPlan decompose_givens(double theta, const NativeGateParams& native);
DecompositionPlan decompose_cphase(double phi, const NativeGateParams& native);

// Like decompose_cphase, but |phi| below the parasitic floor 2|varphi| is
// clamped to the feasibility boundary instead of rejected. The plan then
// realizes CPHASE(sign(phi) * 2 varphi) with the same gate counts.
DecompositionPlan decompose_cphase_clamped(double phi, const NativeGateParams& native);

// Matrix of a placed gate on its own qubit pair (two_qubit) or qubit.
Matrix4cd gate_matrix_2q(const PlacedGate& g);
Matrix2cd gate_matrix_1q(const PlacedGate& g);

}  // namespace fhsim::gates

#endif  // FHSIM_GATES_HPP
