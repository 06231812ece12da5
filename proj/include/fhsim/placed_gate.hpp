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

#ifndef FHSIM_PLACED_GATE_HPP
#define FHSIM_PLACED_GATE_HPP

#include <string>

namespace fhsim {

enum class GateKind {
    X,       // Pauli X
    RX,      // exp(-i xi X / 2), p0 = xi
    RZ,      // diag(1, e^{i z}), p0 = z
    K,       // iSWAP-like hopping gate, p0 = theta
    CPHASE,  // diag(1,1,1,e^{-i phi}), p0 = phi
    GIVENS,  // real rotation in the single-excitation block, p0 = theta
    ISWAP,   // K(-pi/2)
    NATIVE,  // hardware gate K(vartheta) CPHASE(varphi), p0 = vartheta, p1 = varphi
};

struct PlacedGate {
    GateKind kind;
    double p0 = 0.0;
    double p1 = 0.0;
    int q0 = -1;
    int q1 = -1;

    bool two_qubit() const {
        switch (kind) {
            case GateKind::X:
            case GateKind::RX:
            case GateKind::RZ:
                return false;
            default:
                return true;
        }
    }
};

std::string gate_kind_name(GateKind kind);

inline PlacedGate gate_x(int q) { return {GateKind::X, 0, 0, q, -1}; }
inline PlacedGate gate_rx(double xi, int q) { return {GateKind::RX, xi, 0, q, -1}; }
inline PlacedGate gate_rz(double z, int q) { return {GateKind::RZ, z, 0, q, -1}; }
inline PlacedGate gate_k(double theta, int a, int b) { return {GateKind::K, theta, 0, a, b}; }
inline PlacedGate gate_cphase(double phi, int a, int b) { return {GateKind::CPHASE, phi, 0, a, b}; }
inline PlacedGate gate_givens(double theta, int a, int b) { return {GateKind::GIVENS, theta, 0, a, b}; }
inline PlacedGate gate_iswap(int a, int b) { return {GateKind::ISWAP, 0, 0, a, b}; }
inline PlacedGate gate_native(double vartheta, double varphi, int a, int b) {
    return {GateKind::NATIVE, vartheta, varphi, a, b};
}

}  // namespace fhsim

#endif  // FHSIM_PLACED_GATE_HPP
