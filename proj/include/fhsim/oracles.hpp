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

#ifndef FHSIM_ORACLES_HPP
#define FHSIM_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "fhsim/hubbard.hpp"

namespace fhsim::oracles {

// Occupation-number basis restricted to fixed (N_up, N_down); bitmasks are
// site-major per chain, matching the circuit's logical qubit layout.
struct SectorBasis {
    int L = 0;
    int n_up = 0;
    int n_dn = 0;
    std::vector<uint32_t> up_masks, dn_masks;
    std::vector<int> up_index, dn_index;  // mask -> position, -1 elsewhere

    static SectorBasis make(int L, int n_up, int n_dn);
    long dim() const { return static_cast<long>(up_masks.size()) * static_cast<long>(dn_masks.size()); }
    long index(long iu, long id) const { return iu * static_cast<long>(dn_masks.size()) + id; }
};

struct SectorState {
    SectorBasis basis;
    Eigen::VectorXcd amps;
};

// Lowest eigenvector of the sector Hamiltonian.
SectorState sector_ground_state(const HubbardParams& p, int n_up, int n_dn);

// Dense sector Hamiltonian (hopping + interaction + potentials + v_nn).
Eigen::MatrixXd sector_hamiltonian(const HubbardParams& p, const SectorBasis& basis);

// e^{-iHt} |psi0> via dense eigendecomposition.
SectorState exact_evolve(const HubbardParams& p, const SectorState& psi0, double t);

double energy(const HubbardParams& p, const SectorState& psi);

DensityPair densities(const SectorState& psi);

// Same operator splitting as build_trotter_step, with exact sector matrices:
// per step hop_odd -> U_odd -> U_even -> hop_even (hopping_only: odd, even).
SectorState trotterized_reference(const HubbardParams& p, const SectorState& psi0, int eta, bool hopping_only);

// Free-fermion densities n_j(t) = sum_k |(e^{-iht} phi_k)_j|^2 for the
// occupied orbitals (columns of `orbitals`); h must be hermitian.
std::vector<double> free_propagator(const Eigen::MatrixXd& h_single, const Eigen::MatrixXd& orbitals, double t);

// Projects a 2L-qubit statevector onto the sector (amplitudes share the
// site-major ordering, so this is a direct gather).
SectorState project_statevector(const StateVector& state, const SectorBasis& basis);

// Embeds a sector state into a 2L-qubit statevector.
StateVector embed_statevector(const SectorState& psi);

}  // namespace fhsim::oracles

#endif  // FHSIM_ORACLES_HPP
