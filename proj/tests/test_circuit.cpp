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

#include <doctest.h>

#include <bit>

#include "fhsim/circuit.hpp"
#include "fhsim/rng.hpp"

using namespace fhsim;

namespace {

Circuit random_number_conserving_circuit(int n_qubits, int depth, uint64_t seed) {
    Rng rng(seed);
    Circuit c;
    c.n_qubits = n_qubits;
    for (int d = 0; d < depth; ++d) {
        const int q1 = static_cast<int>(rng.uniform() * n_qubits);
        int q2 = static_cast<int>(rng.uniform() * n_qubits);
        if (q2 == q1) q2 = (q1 + 1) % n_qubits;
        const double a = rng.uniform(-1.2, 1.2);
        switch (static_cast<int>(rng.uniform() * 5)) {
            case 0: c.append_moment({gate_k(a, q1, q2)}); break;
            case 1: c.append_moment({gate_cphase(a, q1, q2)}); break;
            case 2: c.append_moment({gate_givens(a, q1, q2)}); break;
            case 3: c.append_moment({gate_iswap(q1, q2)}); break;
            default: c.append_moment({gate_rz(a, q1)}); break;
        }
    }
    return c;
}

}  // namespace

TEST_CASE("text serialization round-trips") {
    Circuit c;
    c.n_qubits = 4;
    c.append_moment({gate_x(0), gate_k(-0.3, 1, 2)});
    c.append_moment({gate_rz(0.25, 3), gate_native(0.783, 0.138, 0, 1)});
    c.append_moment({gate_rx(-1.5, 2), gate_cphase(0.9, 0, 3)});
    c.append_moment({gate_givens(0.7, 2, 3), gate_iswap(0, 1)});
    const std::string text = c.to_text();
    const Circuit back = Circuit::from_text(text);
    REQUIRE(back.n_qubits == 4);
    REQUIRE(back.moments.size() == c.moments.size());
    for (std::size_t m = 0; m < c.moments.size(); ++m) {
        REQUIRE(back.moments[m].gates.size() == c.moments[m].gates.size());
        for (std::size_t g = 0; g < c.moments[m].gates.size(); ++g) {
            const PlacedGate &a = c.moments[m].gates[g], &b = back.moments[m].gates[g];
            CHECK(a.kind == b.kind);
            CHECK(a.p0 == doctest::Approx(b.p0).epsilon(1e-15));
            CHECK(a.p1 == doctest::Approx(b.p1).epsilon(1e-15));
            CHECK(a.q0 == b.q0);
            CHECK(a.q1 == b.q1);
        }
    }
}

TEST_CASE("validate rejects double qubit use inside one moment") {
    Circuit c;
    c.n_qubits = 3;
    c.append_moment({gate_x(0), gate_k(0.2, 0, 1)});
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("compiled circuits replay like the logical ones for K, Givens and CPHASE") {
    // the ideal native synthesizes the full iSWAP exactly; vartheta != pi/4
    // leaves a documented ~|1 - sin(2 vartheta)| residual on full swaps
    const gates::NativeGateParams nat = gates::ideal_native();
    Circuit c;
    c.n_qubits = 4;
    c.append_moment({gate_k(-0.3, 0, 1), gate_givens(0.6, 2, 3)});
    c.append_moment({gate_cphase(0.9, 1, 2)});
    c.append_moment({gate_iswap(0, 3)});
    const Circuit compiled = compile_circuit(c, nat);

    StateVector ideal(4), lowered(4);
    for (int q = 0; q < 4; ++q) {
        ideal.apply_1q(gates::rx(0.4 + 0.3 * q), q);
        lowered.apply_1q(gates::rx(0.4 + 0.3 * q), q);
    }
    apply_circuit(c, ideal);
    apply_circuit(compiled, lowered);
    cxd overlap = 0;
    for (std::size_t i = 0; i < ideal.size(); ++i) overlap += std::conj(ideal.amp(i)) * lowered.amp(i);
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-10);
}

TEST_CASE("compile keeps parallel logical gates parallel and counts natives") {
    Circuit c;
    c.n_qubits = 8;
    c.append_moment({gate_k(-0.3, 0, 1), gate_k(-0.3, 2, 3), gate_k(-0.3, 4, 5), gate_k(-0.3, 6, 7)});
    const Circuit compiled = compile_circuit(c, {0.783, 0.138});
    const GateCounts gc = count_gates(compiled);
    CHECK(gc.two_qubit_native == 8);
    CHECK(compiled.moments.size() == 5);  // the four K plans expand in lockstep
    CHECK_NOTHROW(compiled.validate());
}

TEST_CASE("excitation-number-conserving gate set preserves the Hamming-weight distribution") {
    const int n = 6;
    const Circuit c = random_number_conserving_circuit(n, 40, 99);
    StateVector s(n);
    s.apply_1q(gates::rx(0.9), 0);
    s.apply_1q(gates::rx(1.3), 2);
    s.apply_1q(gates::rx(0.4), 5);
    auto weight_hist = [&](const StateVector& sv) {
        std::vector<double> h(n + 1, 0.0);
        for (std::size_t i = 0; i < sv.size(); ++i)
            h[std::popcount(i)] += std::norm(sv.amp(i));
        return h;
    };
    const auto before = weight_hist(s);
    apply_circuit(c, s);
    const auto after = weight_hist(s);
    for (int w = 0; w <= n; ++w) CHECK(std::abs(before[w] - after[w]) < 1e-10);
}

TEST_CASE("count_gates depth and time follow the two-slot native convention") {
    Circuit c;
    c.n_qubits = 2;
    c.append_moment({gate_native(0.783, 0.138, 0, 1)});
    c.append_moment({gate_rz(0.3, 0), gate_rz(-0.3, 1)});
    c.append_moment({gate_native(0.783, 0.138, 0, 1)});
    const GateCounts gc = count_gates(c);
    CHECK(gc.two_qubit_native == 2);
    CHECK(gc.rz == 2);
    CHECK(gc.depth_slots == 4);
    CHECK(gc.circuit_time_ns == doctest::Approx(64.0));
}

TEST_CASE("from_text rejects malformed circuits") {
    CHECK_THROWS_AS(Circuit::from_text("K(0.3)@0"), std::invalid_argument);
    CHECK_THROWS_AS(Circuit::from_text("WAT@1"), std::invalid_argument);
    CHECK_THROWS_AS(Circuit::from_text("X@0 K(1)@0,1"), std::invalid_argument);
}
