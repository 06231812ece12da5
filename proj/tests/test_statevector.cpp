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

#include <cmath>

#include "fhsim/gates.hpp"
#include "fhsim/statevector.hpp"

using namespace fhsim;

TEST_CASE("identity leaves any state unchanged") {
    StateVector s = StateVector::basis_state(3, 5);
    s.apply_1q(Eigen::Matrix2cd::Identity(), 1);
    s.apply_2q(Eigen::Matrix4cd::Identity(), 0, 2);
    CHECK(std::abs(s.amp(5) - cxd(1, 0)) < 1e-15);
}

TEST_CASE("X on |0...0> flips qubit 0 to give |0...01>") {
    StateVector s(4);
    s.apply_1q(gates::pauli_x(), 0);
    CHECK(std::abs(s.amp(1) - cxd(1, 0)) < 1e-15);
    CHECK(s.number_expectation(0) == doctest::Approx(1.0));
}

TEST_CASE("Rz(pi) turns |+> into |->") {
    StateVector s(1);
    Eigen::Matrix2cd h;
    h << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    s.apply_1q(h, 0);
    s.apply_1q(gates::rz(M_PI), 0);
    // (|0> - |1>)/sqrt(2)
    CHECK(std::abs(s.amp(0) - cxd(1 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(s.amp(1) + cxd(1 / std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("iSWAP maps |01> to i|10>") {
    // q1 = 1, q2 = 0: |q1 q2> = |01> means qubit0 = 1.
    StateVector s = StateVector::basis_state(2, 0b01);
    s.apply_2q(gates::iswap(), 1, 0);
    CHECK(std::abs(s.amp(0b10) - cxd(0, 1)) < 1e-12);
}

TEST_CASE("CPHASE phase lands on |11> only") {
    const double phi = M_PI / 3;
    StateVector s = StateVector::basis_state(2, 0b11);
    s.apply_2q(gates::cphase(phi), 0, 1);
    CHECK(std::abs(s.amp(0b11) - std::exp(cxd(0, -phi))) < 1e-12);
}

TEST_CASE("non-unitary matrices and bad qubits are rejected") {
    StateVector s(2);
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m(0, 0) = 2.0;
    CHECK_THROWS_AS(s.apply_1q(m, 0), std::invalid_argument);
    CHECK_THROWS_AS(s.apply_1q(gates::pauli_x(), 5), std::out_of_range);
    CHECK_THROWS_AS(s.apply_2q(Eigen::Matrix4cd::Identity(), 1, 1), std::invalid_argument);
}

TEST_CASE("norm is preserved by random circuits within 1e-10") {
    Rng rng(42);
    StateVector s(6);
    for (int k = 0; k < 50; ++k) {
        const int q1 = static_cast<int>(rng.uniform() * 6);
        int q2 = static_cast<int>(rng.uniform() * 6);
        if (q2 == q1) q2 = (q1 + 1) % 6;
        s.apply_2q(gates::nc_gate({rng.uniform(0, M_PI / 2), rng.uniform(-3, 3), rng.uniform(-3, 3),
                                   rng.uniform(-3, 3), rng.uniform(-3, 3)}),
                   q1, q2);
    }
    CHECK(std::abs(s.norm_sq() - 1.0) < 1e-10);
}

TEST_CASE("locality: spectators keep their marginals") {
    Rng rng(3);
    StateVector s(5);
    // entangle everything a bit first
    for (int q = 0; q < 5; ++q) s.apply_1q(gates::rx(0.3 + 0.2 * q), q);
    s.apply_2q(gates::k_gate(0.7), 0, 3);
    const auto before = s.marginal({1, 2, 4});
    s.apply_2q(gates::nc_gate({0.3, 0.1, -0.4, 0.9, 1.3}), 0, 3);
    const auto after = s.marginal({1, 2, 4});
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(std::abs(before[i] - after[i]) < 1e-12);
}

TEST_CASE("sampling: |1010> gives identical bitstrings") {
    StateVector s = StateVector::basis_state(4, 0b1010);
    const ShotTable t = s.sample_shots(5, 9);
    REQUIRE(t.shots() == 5);
    for (const auto b : t.bitstrings) CHECK(b == 0b1010);
}

TEST_CASE("sampling a Bell state matches binomial statistics at 3 sigma") {
    StateVector s(2);
    Eigen::Matrix2cd h;
    h << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
    s.apply_1q(h, 0);
    Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();  // control = q2 bit (basis |q1 q2>)
    cnot(0, 0) = 1;
    cnot(3, 1) = 1;  // |01> -> |11>
    cnot(2, 2) = 1;
    cnot(1, 3) = 1;
    s.apply_2q(cnot, 1, 0);
    const int shots = 100000;
    const ShotTable t = s.sample_shots(shots, 1234);
    int n00 = 0;
    for (const auto b : t.bitstrings)
        if (b == 0) n00++;
    const double f = static_cast<double>(n00) / shots;
    CHECK(f > 0.495);
    CHECK(f < 0.505);
}

TEST_CASE("sampling is deterministic given the seed") {
    StateVector s(3);
    s.apply_1q(gates::rx(0.7), 0);
    s.apply_1q(gates::rx(1.1), 2);
    const ShotTable a = s.sample_shots(50, 77);
    const ShotTable b = s.sample_shots(50, 77);
    CHECK(a.bitstrings == b.bitstrings);
}

TEST_CASE("channels: p = 0 leaves the state unchanged") {
    StateVector s = StateVector::basis_state(2, 0b01);
    s.apply_1q(gates::rx(0.4), 1);
    const auto before = s.amps();
    Rng rng(5);
    s.apply_channel({ChannelEvent::Kind::amplitude_damping, 0, 0.0}, rng);
    s.apply_channel({ChannelEvent::Kind::dephasing, 1, 0.0}, rng);
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(std::abs(before[i] - s.amps()[i]) < 1e-12);
}

TEST_CASE("amplitude damping with p = 1 resets |1> to |0>") {
    StateVector s = StateVector::basis_state(1, 1);
    Rng rng(6);
    s.apply_channel({ChannelEvent::Kind::amplitude_damping, 0, 1.0}, rng);
    CHECK(std::abs(s.amp(0) - cxd(1, 0)) < 1e-12);
}

TEST_CASE("dephasing trajectories average to <X> = 1 - 2p at 3 sigma") {
    const double p = 0.2;
    const int trials = 10000;
    double sum = 0;
    Rng rng(8);
    for (int t = 0; t < trials; ++t) {
        StateVector s(1);
        Eigen::Matrix2cd h;
        h << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
        s.apply_1q(h, 0);
        s.apply_channel({ChannelEvent::Kind::dephasing, 0, p}, rng);
        // <X> = 2 Re(a0* a1)
        sum += 2.0 * std::real(std::conj(s.amp(0)) * s.amp(1));
    }
    const double mean = sum / trials;
    const double expect = 1.0 - 2.0 * p;
    const double sigma = std::sqrt((1.0 - expect * expect)) / std::sqrt(trials) + 2.0 * p / std::sqrt(trials);
    CHECK(std::abs(mean - expect) < 3.0 * std::max(sigma, 0.012));
}

TEST_CASE("amplitude-damping trajectory average converges to the analytic channel") {
    const double p = 0.3;
    const int trials = 20000;
    Rng rng(11);
    double sum_n = 0;
    for (int t = 0; t < trials; ++t) {
        StateVector s(1);
        s.apply_1q(gates::rx(1.0), 0);  // partially excited
        s.apply_channel({ChannelEvent::Kind::amplitude_damping, 0, p}, rng);
        sum_n += s.number_expectation(0);
    }
    const double n0 = std::sin(0.5) * std::sin(0.5);
    const double expect = (1.0 - p) * n0;
    CHECK(std::abs(sum_n / trials - expect) < 3.0 * 0.5 / std::sqrt(trials));
}

TEST_CASE("readout_flip is rejected by apply_channel") {
    StateVector s(1);
    Rng rng(1);
    CHECK_THROWS_AS(s.apply_channel({ChannelEvent::Kind::readout_flip, 0, 0.1}, rng), std::invalid_argument);
}

TEST_CASE("qubit count is capped at 24") {
    CHECK_THROWS_AS(StateVector(25), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(0), std::invalid_argument);
}
