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

#ifndef FHSIM_CIRCUIT_HPP
#define FHSIM_CIRCUIT_HPP

#include <string>
#include <vector>

#include "fhsim/gates.hpp"
#include "fhsim/placed_gate.hpp"
#include "fhsim/statevector.hpp"

namespace fhsim {

struct Moment {
    std::vector<PlacedGate> gates;
};

// An ordered list of moments; within a moment no qubit appears twice.
struct Circuit {
    int n_qubits = 0;
    std::vector<Moment> moments;

    void append_moment(std::vector<PlacedGate> gates);
    void append(const Circuit& other);
    void validate() const;

    // Line-oriented text format: one moment per line, gates as
    // NAME(params)@q1[,q2] separated by spaces; '#' starts a comment.
    std::string to_text() const;
    static Circuit from_text(const std::string& text);
};

struct GateCounts {
    long two_qubit_native = 0;  // NATIVE placements (compiled) or plan-expanded totals
    long two_qubit_logical = 0;
    long microwave = 0;  // X and RX gates
    long rz = 0;
    long depth_slots = 0;       // native = 2 slots, microwave layer = 1, Rz free
    double circuit_time_ns = 0; // critical path: native 32 ns, microwave 25 ns
};

GateCounts count_gates(const Circuit& c);

// Applies gates as placed (logical or compiled), left to right.
void apply_circuit(const Circuit& c, StateVector& state);

// Lowers K/GIVENS/ISWAP/CPHASE to RZ/RX/NATIVE frames using the
// decomposition plans for the given native gate. clamp_infeasible_cphase
// substitutes the parasitic-floor CPHASE instead of throwing.
Circuit compile_circuit(const Circuit& c, const gates::NativeGateParams& native,
                        bool clamp_infeasible_cphase = false);

}  // namespace fhsim

#endif  // FHSIM_CIRCUIT_HPP
