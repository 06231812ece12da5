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

#include <Eigen/Eigenvalues>
#include <bit>
#include <set>

#include "fhsim/hubbard.hpp"

using namespace fhsim;

namespace {

// Independent single-particle oracle: densities of the N lowest orbitals.
std::vector<double> orbital_densities(const HubbardParams& p, int spin, int n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(single_particle_hamiltonian(p, spin));
    std::vector<double> d(p.L, 0.0);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < p.L; ++j) d[j] += es.eigenvectors()(j, k) * es.eigenvectors()(j, k);
    return d;
}

HubbardParams trapped_h0() {
    HubbardParams p;
    p.L = 8;
    p.J = 1.0;
    p.U = 0.0;
    p.tau = 0.3;
    p.set_trap(kSpinUp, {4.0, 4.5, 1.0});
    return p;
}

long count_kind(const Circuit& c, GateKind kind) {
    long n = 0;
    for (const auto& m : c.moments)
        for (const auto& g : m.gates)
            if (g.kind == kind) ++n;
    return n;
}

}  // namespace

TEST_CASE("gaussian trap ground state densities match the diagonalization oracle") {
    const HubbardParams h0 = trapped_h0();
    const Circuit init = build_initial_state_circuit(h0, 2, 0);
    StateVector s(16);
    apply_circuit(init, s);
    const DensityPair d = densities_from_state(s, 8);
    const auto oracle = orbital_densities(h0, kSpinUp, 2);
    // frozen anchors from the 8x8 eigenvector oracle
    const double frozen[8] = {0.002055004589, 0.021965267741, 0.186235788437, 0.789743939233,
                              0.789743939233, 0.186235788437, 0.021965267741, 0.002055004589};
    for (int j = 0; j < 8; ++j) {
        CHECK(std::abs(d.up[j] - oracle[j]) < 1e-8);
        CHECK(std::abs(d.up[j] - frozen[j]) < 1e-6);
        CHECK(std::abs(d.dn[j]) < 1e-12);
    }
}

TEST_CASE("empty chains produce the vacuum with no gates") {
    HubbardParams h0 = trapped_h0();
    const Circuit init = build_initial_state_circuit(h0, 0, 0);
    CHECK(init.moments.empty());
}

TEST_CASE("quarter-filling initialization uses N(L-N) Givens rotations per chain") {
    const HubbardParams h0 = trapped_h0();
    const Circuit init = build_initial_state_circuit(h0, 2, 2);
    CHECK(count_kind(init, GateKind::GIVENS) == 24);  // 12 per chain
    CHECK(count_kind(init, GateKind::X) == 4);
    const Circuit compiled = compile_circuit(init, {0.783, 0.138});
    CHECK(count_gates(compiled).two_qubit_native == 48);
}

TEST_CASE("three-particle chains also match the orbital oracle") {
    HubbardParams h0 = trapped_h0();
    h0.set_trap(kSpinDown, {2.0, 3.5, 1.5});
    const Circuit init = build_initial_state_circuit(h0, 3, 3);
    StateVector s(16);
    apply_circuit(init, s);
    const DensityPair d = densities_from_state(s, 8);
    const auto up = orbital_densities(h0, kSpinUp, 3);
    const auto dn = orbital_densities(h0, kSpinDown, 3);
    for (int j = 0; j < 8; ++j) {
        CHECK(std::abs(d.up[j] - up[j]) < 1e-8);
        CHECK(std::abs(d.dn[j] - dn[j]) < 1e-8);
    }
}

TEST_CASE("wavepacket with zero momentum has real nonnegative amplitudes") {
    const Circuit c = build_wavepacket_circuit(8, kSpinUp, 4.5, 1.0, 0.0);
    StateVector s(16);
    apply_circuit(c, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(std::abs(s.amp(i).imag()) < 1e-12);
        CHECK(s.amp(i).real() > -1e-12);
    }
}

TEST_CASE("wavepacket densities match the target gaussian") {
    const double center = 5.0, width = 1.2;
    const Circuit c = build_wavepacket_circuit(8, kSpinUp, center, width, M_PI / 3);
    StateVector s(16);
    apply_circuit(c, s);
    const DensityPair d = densities_from_state(s, 8);
    std::vector<double> target(8);
    double norm = 0;
    for (int j = 0; j < 8; ++j) {
        const double x = (j + 1) - center;
        target[j] = std::exp(-x * x / (2.0 * width * width));
        norm += target[j];
    }
    for (int j = 0; j < 8; ++j) CHECK(std::abs(d.up[j] - target[j] / norm) < 1e-8);
}

TEST_CASE("wavepacket width must be positive") {
    CHECK_THROWS_AS(build_wavepacket_circuit(8, kSpinUp, 4.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("opposite momenta drift in opposite directions under hopping-only steps") {
    HubbardParams p;
    p.L = 8;
    p.J = 1.0;
    p.tau = 0.3;
    TrotterOptions opts;
    opts.hopping_only = true;
    const Circuit step = build_trotter_step(p, opts);
    auto drift = [&](double momentum) {
        Circuit c = build_wavepacket_circuit(8, kSpinUp, 4.5, 1.0, momentum);
        for (int k = 0; k < 5; ++k) c.append(step);
        StateVector s(16);
        apply_circuit(c, s);
        const DensityPair d = densities_from_state(s, 8);
        double pos = 0;
        for (int j = 0; j < 8; ++j) pos += (j + 1) * d.up[j];
        return pos - 4.5;
    };
    CHECK(drift(M_PI / 2) > 0.3);
    CHECK(drift(-M_PI / 2) < -0.3);
}

TEST_CASE("a Trotter step has the published native-gate counts") {
    HubbardParams p;
    p.L = 8;
    p.J = 1.0;
    p.U = 3.0;
    p.tau = 0.3;
    TrotterOptions opts;
    const Circuit step = build_trotter_step(p, opts);
    CHECK(count_kind(step, GateKind::K) == 14);       // 8 odd + 6 even bonds
    CHECK(count_kind(step, GateKind::ISWAP) == 6);    // 3 per chain
    CHECK(count_kind(step, GateKind::CPHASE) == 8);   // 4 odd + 4 even sites
    const Circuit compiled = compile_circuit(step, {0.783, 0.138});
    CHECK(count_gates(compiled).two_qubit_native == 56);

    TrotterOptions hop;
    hop.hopping_only = true;
    const Circuit hstep = build_trotter_step(p, hop);
    CHECK(count_kind(hstep, GateKind::K) == 14);
    CHECK(count_gates(compile_circuit(hstep, {0.783, 0.138})).two_qubit_native == 28);
}

TEST_CASE("spin echoes bracket the interaction stages with X pairs on idle qubits") {
    HubbardParams p;
    p.L = 8;
    p.U = 2.0;
    p.tau = 0.3;
    TrotterOptions opts;
    opts.spin_echo = true;
    const Circuit step = build_trotter_step(p, opts);
    CHECK(count_kind(step, GateKind::X) == 32);  // 8 idle qubits x 2 stages x 2 echoes
    // echoes cancel exactly in a noiseless replay
    TrotterOptions plain;
    const Circuit step0 = build_trotter_step(p, plain);
    StateVector a(16), b(16);
    const Circuit init = build_initial_state_circuit(trapped_h0(), 2, 2);
    apply_circuit(init, a);
    apply_circuit(init, b);
    apply_circuit(step, a);
    apply_circuit(step0, b);
    cxd overlap = 0;
    for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a.amp(i)) * b.amp(i);
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-10);
}

TEST_CASE("one noiseless step leaves the free ground state invariant as tau -> 0") {
    HubbardParams free_h;
    free_h.L = 8;
    free_h.J = 1.0;
    free_h.U = 0.0;
    auto fidelity_err = [&](double tau) {
        HubbardParams p = free_h;
        p.tau = tau;
        TrotterOptions opts;
        opts.hopping_only = true;
        const Circuit init = build_initial_state_circuit(free_h, 2, 2);
        Circuit c = init;
        c.append(build_trotter_step(p, opts));
        StateVector evolved(16), reference(16);
        apply_circuit(c, evolved);
        apply_circuit(init, reference);
        cxd overlap = 0;
        for (std::size_t i = 0; i < evolved.size(); ++i)
            overlap += std::conj(reference.amp(i)) * evolved.amp(i);
        return 1.0 - std::abs(overlap);
    };
    const double e1 = fidelity_err(0.3);
    const double e2 = fidelity_err(0.15);
    const double e3 = fidelity_err(0.075);
    CHECK(e1 < 0.02);
    CHECK(e2 < 0.5 * e1);
    CHECK(e3 < 0.5 * e2);
}

TEST_CASE("densities_from_shots maps chains back to sites") {
    ShotTable t;
    t.n_qubits = 16;
    t.bitstrings.assign(5, uint64_t{1});  // site 1, spin up
    const DensityPair d = densities_from_shots(t, 8);
    CHECK(d.up[0] == doctest::Approx(1.0));
    for (int j = 1; j < 8; ++j) CHECK(d.up[j] == 0.0);

    ShotTable both;
    both.n_qubits = 16;
    both.bitstrings.assign(3, (uint64_t{1} << 2) | (uint64_t{1} << 10));  // site 3 up and down
    const DensityPair b = densities_from_shots(both, 8);
    CHECK(b.charge()[2] == doctest::Approx(2.0));
    CHECK(b.spin()[2] == doctest::Approx(0.0));
    CHECK_THROWS_AS(densities_from_shots(ShotTable{16, 0, {}}, 8), std::invalid_argument);
}

TEST_CASE("shot densities agree with statevector expectations at 3 sigma") {
    const HubbardParams h0 = trapped_h0();
    const Circuit init = build_initial_state_circuit(h0, 2, 2);
    StateVector s(16);
    apply_circuit(init, s);
    const DensityPair expect = densities_from_state(s, 8);
    const ShotTable t = s.sample_shots(20000, 555);
    const DensityPair got = densities_from_shots(t, 8);
    for (int j = 0; j < 8; ++j) {
        const double sigma = std::sqrt(std::max(expect.up[j] * (1 - expect.up[j]), 1e-4) / 20000.0);
        CHECK(std::abs(got.up[j] - expect.up[j]) < 3.5 * sigma);
    }
}

TEST_CASE("spread: uniform density N/L with N = 4 gives kappa = 8") {
    const std::vector<double> rho_plus(8, 0.5);
    CHECK(spread(rho_plus, 8) == doctest::Approx(8.0));  // 0.5 * sum_j |j - 4.5| = 0.5 * 16
}

TEST_CASE("spread: density split between the two middle sites gives kappa = 2") {
    std::vector<double> rho(8, 0.0);
    rho[3] = 2.0;
    rho[4] = 2.0;
    CHECK(spread(rho, 8) == doctest::Approx(2.0));
}

TEST_CASE("the trapped initial state is more concentrated than uniform") {
    const HubbardParams h0 = trapped_h0();
    const Circuit init = build_initial_state_circuit(h0, 2, 2);
    StateVector s(16);
    apply_circuit(init, s);
    const DensityPair d = densities_from_state(s, 8);
    std::vector<double> uniform(8, 0.5);
    CHECK(spread(d.charge(), 8) < spread(uniform, 8));
}

TEST_CASE("spread_rate: constant and linear series") {
    const std::vector<double> times = {0, 0.3, 0.6, 0.9};
    const auto zero = spread_rate({2, 2, 2, 2}, times);
    for (const double r : zero) CHECK(r == doctest::Approx(0.0));
    const auto lin = spread_rate({0, 0.9, 1.8, 2.7}, times);
    for (const double r : lin) CHECK(r == doctest::Approx(3.0));
    CHECK_THROWS_AS(spread_rate({1.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("all 16 qubit assignments are distinct bijections into the device") {
    std::set<std::vector<int>> seen;
    for (int id = 0; id < 16; ++id) {
        const QubitAssignment a = QubitAssignment::variant(id);
        std::vector<int> flat;
        std::set<int> phys;
        for (int spin = 0; spin < 2; ++spin)
            for (int j = 0; j < 8; ++j) {
                flat.push_back(a.physical(spin, j));
                phys.insert(a.physical(spin, j));
                CHECK(a.physical(spin, j) >= 0);
                CHECK(a.physical(spin, j) < QubitAssignment::kDeviceQubits);
            }
        CHECK(phys.size() == 16);  // bijective
        CHECK(seen.insert(flat).second);
    }
    CHECK_THROWS_AS(QubitAssignment::variant(16), std::invalid_argument);
}

TEST_CASE("build_initial_state_circuit validates particle numbers") {
    const HubbardParams h0 = trapped_h0();
    CHECK_THROWS_AS(build_initial_state_circuit(h0, 9, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_initial_state_circuit(h0, -1, 0), std::invalid_argument);
}
