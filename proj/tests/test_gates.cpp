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

#include <Eigen/SVD>
#include <cmath>

#include "fhsim/gates.hpp"
#include "fhsim/rng.hpp"

using namespace fhsim;
using namespace fhsim::gates;
using Eigen::Matrix4cd;

namespace {
const cxd kI(0.0, 1.0);

Matrix4cd reshuffle(const Matrix4cd& m) {
    // R[(i1,j1),(i2,j2)] = M[(i1,i2),(j1,j2)]
    Matrix4cd r;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < 2; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) r(2 * i1 + j1, 2 * i2 + j2) = m(2 * i1 + i2, 2 * j1 + j2);
    return r;
}

}  // namespace

TEST_CASE("nc_gate at all-zero angles is the identity") {
    CHECK((nc_gate({0, 0, 0, 0, 0}) - Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("nc_gate at theta = pi/2 swaps the single-excitation states with -i") {
    const Matrix4cd u = nc_gate({M_PI / 2, 0, 0, 0, 0});
    CHECK(std::abs(u(2, 1) - (-kI)) < 1e-12);  // |01> -> -i|10>
    CHECK(std::abs(u(1, 2) - (-kI)) < 1e-12);
    CHECK(std::abs(u(1, 1)) < 1e-12);
    CHECK(std::abs(u(3, 3) - cxd(1, 0)) < 1e-12);
}

TEST_CASE("native gate K(vt) CPHASE(vp) equals nc_gate(vt,0,0,0,vp) and the fsim dressing identity") {
    const double vt = 0.783, vp = 0.138;
    const Matrix4cd lhs = k_gate(vt) * cphase(vp);
    CHECK((lhs - nc_gate({vt, 0, 0, 0, vp})).cwiseAbs().maxCoeff() < 1e-14);
    // K(vt) CPHASE(vp) = e^{-i vp/4} e^{i vp (Z1+Z2)/4} F(vt, vp)
    Matrix4cd zdress = Matrix4cd::Zero();
    zdress(0, 0) = std::exp(kI * (vp / 2));
    zdress(1, 1) = 1;
    zdress(2, 2) = 1;
    zdress(3, 3) = std::exp(-kI * (vp / 2));
    const Matrix4cd rhs = std::exp(-kI * (vp / 4)) * zdress * fsim(vt, vp);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gate set fixed points: zero angles are identities") {
    CHECK((k_gate(0) - Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((cphase(0) - Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((givens(0) - Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((k_gate(-M_PI / 2) - iswap()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((fsim(M_PI / 4, 0) - k_gate(M_PI / 4)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("nc_gate_power closed form: trivial cases") {
    const NcGateParams p{0.783, 0.1, 0.05, 0.2, 0.138};
    CHECK((nc_gate_power(p, 1) - nc_gate(p)).cwiseAbs().maxCoeff() < 1e-13);
    const NcGateParams zero{0, 0, 0.3, 0.0, 0.0};
    for (const long n : {1L, 2L, 5L})
        CHECK((nc_gate_power(zero, n) - Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nc_gate_power equals the 7-fold product for the reference parameters") {
    const NcGateParams p{0.783, 0.1, 0.05, 0.2, 0.138};
    Matrix4cd ref = Matrix4cd::Identity();
    const Matrix4cd u = nc_gate(p);
    for (int k = 0; k < 7; ++k) ref = u * ref;
    CHECK((nc_gate_power(p, 7) - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nc_gate_power equals iterated products for n up to 128 on random parameters") {
    Rng rng(2026);
    for (int trial = 0; trial < 8; ++trial) {
        const NcGateParams p{rng.uniform(0, M_PI / 2), rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI),
                             rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI)};
        const Matrix4cd u = nc_gate(p);
        Matrix4cd ref = Matrix4cd::Identity();
        for (long n = 1; n <= 128; ++n) {
            ref = u * ref;
            if (n == 1 || n == 2 || n == 7 || n == 31 || n == 64 || n == 128)
                CHECK((nc_gate_power(p, n) - ref).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("nc_gate commutes with total Z") {
    Matrix4cd ztot = Matrix4cd::Zero();
    ztot(0, 0) = 2;
    ztot(3, 3) = -2;  // Z1 + Z2 = diag(2, 0, 0, -2)
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        const Matrix4cd u = nc_gate({rng.uniform(0, M_PI / 2), rng.uniform(-3, 3), rng.uniform(-3, 3),
                                     rng.uniform(-3, 3), rng.uniform(-3, 3)});
        CHECK((u * ztot - ztot * u).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("rz2 is the z-rotation member of the family and shifts cycle parameters linearly") {
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        const double z1 = rng.uniform(-3, 3), z2 = rng.uniform(-3, 3);
        const double zm = (z1 - z2) / 2, zp = (z1 + z2) / 2;
        CHECK((rz2(z1, z2) - nc_gate({0, zm, 0, -zp, 0})).cwiseAbs().maxCoeff() < 1e-13);
        const NcGateParams p{rng.uniform(0, M_PI / 2), rng.uniform(-1, 1), rng.uniform(-1, 1),
                             rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Matrix4cd lhs = nc_gate(p) * rz2(z1, z2);
        const Matrix4cd rhs = nc_gate({p.theta, p.zeta + zm, p.chi + zm, p.gamma - zp, p.phi});
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("cycle eigenvectors and eigenvalues follow the closed form") {
    Rng rng(6);
    for (int t = 0; t < 25; ++t) {
        const double theta = rng.uniform(0.05, M_PI / 2 - 0.05);
        const double zeta_c = rng.uniform(-3, 3);
        const double chi_c = rng.uniform(-3, 3);
        const double gamma_c = rng.uniform(-3, 3);
        const double phi = rng.uniform(-3, 3);
        const Matrix4cd uc = nc_gate({theta, zeta_c, chi_c, gamma_c, phi});
        const double omega = std::acos(std::clamp(std::cos(theta) * std::cos(zeta_c), -1.0, 1.0));
        const double s_c = std::atan2(1.0, std::cos(theta) / std::sin(theta) * std::sin(zeta_c));
        Eigen::Vector4cd plus = Eigen::Vector4cd::Zero(), minus = Eigen::Vector4cd::Zero();
        plus(1) = std::cos(s_c / 2);
        plus(2) = std::sin(s_c / 2) * std::exp(-kI * chi_c);
        minus(1) = std::sin(s_c / 2);
        minus(2) = -std::cos(s_c / 2) * std::exp(-kI * chi_c);
        const cxd ev_plus = std::exp(-kI * (gamma_c + omega));
        const cxd ev_minus = std::exp(-kI * (gamma_c - omega));
        CHECK((uc * plus - ev_plus * plus).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((uc * minus - ev_minus * minus).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("unitary_distance basics") {
    const Matrix4cd u = nc_gate({0.5, 0.2, -0.3, 0.8, 1.0});
    CHECK(unitary_distance(u, u) < 1e-15);
    CHECK(unitary_distance(u, std::exp(kI * (M_PI / 7)) * u) < 1e-13);
    Matrix4cd xi = Matrix4cd::Zero();  // X (x) I
    xi(0, 2) = 1;
    xi(1, 3) = 1;
    xi(2, 0) = 1;
    xi(3, 1) = 1;
    CHECK(unitary_distance(Matrix4cd::Identity(), xi) == doctest::Approx(1.0));
}

TEST_CASE("decompose_k: trivial plan replays to the identity") {
    const auto plan = decompose_k(0.0, ideal_native());
    CHECK(unitary_distance(plan.replay(), Matrix4cd::Identity()) < 1e-10);
    CHECK(plan.native_count() == 2);
}

TEST_CASE("decompose_k replays the paper's hopping angles exactly") {
    for (const double theta : {-0.3, -0.3 + M_PI / 2}) {
        const auto plan = decompose_k(theta, ideal_native());
        CHECK(unitary_distance(plan.replay(), k_gate(theta)) < 1e-10);
    }
    // the actual native vartheta, no parasitic phase
    const NativeGateParams nat{0.783, 0.0};
    for (const double theta : {-0.3, -0.3 + M_PI / 2, 1.1, -1.2}) {
        const auto plan = decompose_k(theta, nat);
        CHECK(unitary_distance(plan.replay(), k_gate(theta)) < 1e-10);
    }
}

TEST_CASE("decompose_k with a parasitic phase leaves exactly the ZZ residual") {
    const NativeGateParams nat{0.783, 0.138};
    for (const double theta : {-0.3, 0.9}) {
        const auto plan = decompose_k(theta, nat);
        Matrix4cd zz = Matrix4cd::Identity();
        const double vp = nat.varphi;
        zz(0, 0) = std::exp(-kI * (vp / 2));
        zz(1, 1) = std::exp(kI * (vp / 2));
        zz(2, 2) = std::exp(kI * (vp / 2));
        zz(3, 3) = std::exp(-kI * (vp / 2));
        CHECK(unitary_distance(plan.replay(), k_gate(theta) * zz) < 1e-10);
    }
}

TEST_CASE("decompose_givens: pi/2 sends |01> to |10>") {
    const auto plan = decompose_givens(M_PI / 2, ideal_native());
    const Matrix4cd u = plan.replay();
    CHECK(unitary_distance(u, givens(M_PI / 2)) < 1e-10);
    CHECK(std::abs(std::abs(u(2, 1)) - 1.0) < 1e-10);
}

TEST_CASE("decompose_givens over a 20-point grid") {
    Rng rng(7);
    for (int k = 0; k < 20; ++k) {
        const double theta = rng.uniform(-M_PI / 2, M_PI / 2);
        const auto plan = decompose_givens(theta, ideal_native());
        CHECK(unitary_distance(plan.replay(), givens(theta)) < 1e-10);
    }
}

TEST_CASE("decompose_cphase at phi = pi with the ideal native is a CZ up to Z rotations") {
    const auto plan = decompose_cphase(M_PI, {M_PI / 4, 0.0});
    CHECK(plan.alpha == doctest::Approx(M_PI / 2));
    CHECK(unitary_distance(plan.replay(), cphase(M_PI)) < 1e-10);
}

TEST_CASE("decompose_cphase rejects phi below the parasitic floor, naming the inequality") {
    try {
        decompose_cphase(0.1, {0.783, 0.138});
        FAIL("expected InfeasibleDecomposition");
    } catch (const InfeasibleDecomposition& e) {
        const std::string msg = e.what();
        CHECK(msg.find("sin(phi/4)") != std::string::npos);
        CHECK(msg.find("sin(varphi/2)") != std::string::npos);
    }
}

TEST_CASE("decompose_cphase_clamped floors the angle instead of throwing") {
    const NativeGateParams nat{0.783, 0.138};
    const auto plan = decompose_cphase_clamped(0.0, nat);
    CHECK(unitary_distance(plan.replay(), cphase(2 * nat.varphi)) < 1e-10);
    CHECK(plan.native_count() == 2);
}

TEST_CASE("decompose_cphase handles the interaction angle with the native parasitic phase") {
    const auto plan = decompose_cphase(0.3 * 3.0, {0.783, 0.138});
    CHECK(unitary_distance(plan.replay(), cphase(0.9)) < 1e-10);
}

TEST_CASE("decompose_cphase over 100 random feasible triples") {
    Rng rng(8);
    int tested = 0;
    while (tested < 100) {
        const double phi = 0.9 + rng.uniform(-0.6, 1.5);
        const double vt = 0.783 + rng.uniform(-0.05, 0.05);
        const double vp = 0.138 + rng.uniform(-0.05, 0.05);
        if (std::abs(std::sin(phi / 4)) < std::abs(std::sin(vp / 2)) ||
            std::abs(std::sin(phi / 4)) > std::abs(std::sin(vt)))
            continue;
        const auto plan = decompose_cphase(phi, {vt, vp});
        CHECK(unitary_distance(plan.replay(), cphase(phi)) < 1e-10);
        tested++;
    }
}

TEST_CASE("all plans replay their targets over a 50-point random grid") {
    Rng rng(9);
    for (int k = 0; k < 50; ++k) {
        const double vt = M_PI / 4 + rng.uniform(-0.03, 0.03);
        // full angle range, clipped to the synthesis window |sin t| <= sin 2vt
        double theta = rng.uniform(-M_PI, M_PI);
        if (std::abs(std::sin(theta)) > std::sin(2 * vt)) theta = std::round(theta / M_PI) * M_PI + 0.2;
        CHECK(unitary_distance(decompose_k(theta, {vt, 0.0}).replay(), k_gate(theta)) < 1e-10);
        CHECK(unitary_distance(decompose_givens(theta, {vt, 0.0}).replay(), givens(theta)) < 1e-10);
    }
    // angles beyond pi/2 exercise the negative-diagonal branch
    for (const double theta : {2.0, -2.5, 3.0, M_PI}) {
        CHECK(unitary_distance(decompose_k(theta, ideal_native()).replay(), k_gate(theta)) < 1e-10);
        CHECK(unitary_distance(decompose_givens(theta, ideal_native()).replay(), givens(theta)) < 1e-10);
    }
}

TEST_CASE("the sandwiched composite matches the CPHASE operator-Schmidt coefficients") {
    Rng rng(10);
    for (int k = 0; k < 10; ++k) {
        const double phi = rng.uniform(0.3, 2.8);
        const double vt = 0.783, vp = 0.138;
        if (std::abs(std::sin(phi / 4)) < std::abs(std::sin(vp / 2))) continue;
        const auto plan = decompose_cphase(phi, {vt, vp});
        // strip the outer Rx frames and residual Z: composite = frames 1..6
        Matrix4cd comp = Matrix4cd::Identity();
        DecompositionPlan inner;
        inner.gate_sequence.assign(plan.gate_sequence.begin() + 1, plan.gate_sequence.end() - 2);
        comp = inner.replay();
        const Eigen::JacobiSVD<Matrix4cd> s1(reshuffle(comp));
        const Eigen::JacobiSVD<Matrix4cd> s2(reshuffle(cphase(phi)));
        // two nonzero coefficients {2|cos(phi/4)|, 2|sin(phi/4)|}
        std::vector<double> ref = {2 * std::abs(std::cos(phi / 4)), 2 * std::abs(std::sin(phi / 4)), 0, 0};
        std::sort(ref.begin(), ref.end(), std::greater<>());
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(s1.singularValues()(i) - ref[i]) < 1e-10);
            CHECK(std::abs(s2.singularValues()(i) - ref[i]) < 1e-10);
        }
    }
}

TEST_CASE("lambda_n handles the sin(Omega) -> 0 limit") {
    CHECK(lambda_n(5, 0.0) == doctest::Approx(5.0));
    CHECK(lambda_n(4, 1e-9) == doctest::Approx(4.0));
    CHECK(lambda_n(3, M_PI) == doctest::Approx(3.0));
    CHECK(lambda_n(7, 0.5) == doctest::Approx(std::sin(3.5) / std::sin(0.5)));
}

TEST_CASE("NcGateParams validation enforces the iSWAP-angle range") {
    const NcGateParams bad_low{-0.1, 0, 0, 0, 0};
    const NcGateParams bad_high{M_PI / 2 + 0.1, 0, 0, 0, 0};
    const NcGateParams good{0.783, 0, 0, 0, 0};
    CHECK_THROWS_AS(bad_low.validate(), std::invalid_argument);
    CHECK_THROWS_AS(bad_high.validate(), std::invalid_argument);
    CHECK_NOTHROW(good.validate());
}
