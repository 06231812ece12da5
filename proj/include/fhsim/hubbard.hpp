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

#ifndef FHSIM_HUBBARD_HPP
#define FHSIM_HUBBARD_HPP

#include <array>
#include <vector>

#include "fhsim/circuit.hpp"

namespace fhsim {

inline constexpr int kSpinUp = 0;
inline constexpr int kSpinDown = 1;

struct GaussianTrap {
    double lambda = 0.0;
    double center = 4.5;  // in site units, sites are 1-indexed
    double sigma = 1.0;
};

// 1D Fermi-Hubbard chain with open boundaries; energies in units of J when
// J = 1, times in hbar/J. v_nn is a same-spin nearest-neighbor coupling used
// to model the parasitic controlled phase.
struct HubbardParams {
    int L = 8;
    double J = 1.0;
    double U = 0.0;
    double tau = 0.3;
    std::array<std::vector<double>, 2> eps;  // per spin, per site (empty = zeros)
    double v_nn = 0.0;
    std::vector<double> v_bond;  // per-bond override of v_nn (both spins)

    double eps_at(int spin, int site0) const {
        return eps[spin].empty() ? 0.0 : eps[spin].at(site0);
    }
    double v_at(int bond0) const { return v_bond.empty() ? v_nn : v_bond.at(bond0); }
    void set_trap(int spin, const GaussianTrap& trap);
    void validate() const;
};

// Single-particle hopping matrix (L x L) for one spin species.
Eigen::MatrixXd single_particle_hamiltonian(const HubbardParams& p, int spin);

// Logical qubit layout is fixed site-major: up sites 1..L on qubits 0..L-1,
// down sites on qubits L..2L-1. Assignments map sites to physical device
// qubits and only affect which noise parameters a gate sees.
inline int logical_qubit(int spin, int site0, int L) { return spin * L + site0; }

// Synthetic 24-qubit device: a 4x6 grid (id = 6*row + col). The 16 variants
// are generated by reverse / spin-exchange / horizontal-flip / upper-lower,
// acting on two horseshoe chains in a 4x4 block.
struct QubitAssignment {
    int variant_id = 0;
    std::array<std::vector<int>, 2> site_to_physical;

    static QubitAssignment variant(int id, int L = 8);
    int physical(int spin, int site0) const { return site_to_physical[spin][site0]; }
    static constexpr int kDeviceQubits = 24;
};

struct TrotterOptions {
    bool hopping_only = false;
    bool spin_echo = false;
};

// Givens-network moments preparing the Slater determinant of Q (N x L real
// orthonormal rows) on qubits [offset, offset+L); X gates are included.
std::vector<Moment> slater_prep_moments(const Eigen::MatrixXd& q_rows, int qubit_offset);

// Ground state of the (noninteracting) h0 per chain via Givens networks.
Circuit build_initial_state_circuit(const HubbardParams& h0, int n_up, int n_dn);

// Single-particle Gaussian wavepacket with a momentum phase gradient.
Circuit build_wavepacket_circuit(int L, int spin, double center, double width, double momentum);

// One 5-stage Trotter step (both chains); hopping_only keeps stages 1 and 5.
Circuit build_trotter_step(const HubbardParams& p, const TrotterOptions& opts);

struct DensityPair {
    std::vector<double> up, dn;

    std::vector<double> charge() const;  // rho+
    std::vector<double> spin() const;    // rho-
};

DensityPair densities_from_shots(const ShotTable& shots, int L);
DensityPair densities_from_state(const StateVector& state, int L);

// kappa = sum_j |j - (L+1)/2| rho_j, sites 1-indexed.
double spread(const std::vector<double>& rho, int L);

// Central differences inside, one-sided at the ends; needs >= 2 points.
std::vector<double> spread_rate(const std::vector<double>& kappa, const std::vector<double>& times);

struct DensitySeries {
    std::vector<int> etas;
    std::vector<double> times;
    std::vector<DensityPair> rho;  // per eta
    std::vector<DensityPair> sem;  // empty when not applicable
    std::vector<double> kappa_plus, kappa_minus;

    void compute_kappas(int L);
};

}  // namespace fhsim

#endif  // FHSIM_HUBBARD_HPP
