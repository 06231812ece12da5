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

#include "fhsim/gates.hpp"

#include <cmath>
#include <sstream>

namespace fhsim {

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::X: return "X";
        case GateKind::RX: return "RX";
        case GateKind::RZ: return "RZ";
        case GateKind::K: return "K";
        case GateKind::CPHASE: return "CPHASE";
        case GateKind::GIVENS: return "G";
        case GateKind::ISWAP: return "ISWAP";
        case GateKind::NATIVE: return "NATIVE";
    }
    return "?";
}

}  // namespace fhsim

namespace fhsim::gates {

namespace {
const cxd kI(0.0, 1.0);
}

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    return a;
}

void NcGateParams::validate() const {
    if (theta < -1e-12 || theta > M_PI / 2 + 1e-12)
        throw std::invalid_argument("NcGateParams: theta must be in [0, pi/2]");
}

NcGateParams NcGateParams::canonical() const {
    NcGateParams c = *this;
    c.zeta = wrap_angle(zeta);
    c.chi = wrap_angle(chi);
    c.gamma = wrap_angle(gamma);
    c.phi = wrap_angle(phi);
    return c;
}

void NativeGateParams::validate() const {
    if (std::abs(vartheta - M_PI / 4) >= 0.2)
        throw std::invalid_argument("NativeGateParams: |vartheta - pi/4| must be < 0.2");
    if (varphi < 0.0 || varphi >= M_PI / 4)
        throw std::invalid_argument("NativeGateParams: varphi must be in [0, pi/4)");
}

Matrix2cd rz(double z) {
    Matrix2cd m;
    m << 1, 0, 0, std::exp(kI * z);
    return m;
}

Matrix2cd rx(double xi) {
    Matrix2cd m;
    const double c = std::cos(xi / 2), s = std::sin(xi / 2);
    m << c, -kI * s, -kI * s, c;
    return m;
}

Matrix2cd pauli_x() {
    Matrix2cd m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2cd pauli_z() {
    Matrix2cd m;
    m << 1, 0, 0, -1;
    return m;
}

Matrix4cd nc_gate(const NcGateParams& p) {
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    Matrix4cd u = Matrix4cd::Zero();
    u(0, 0) = 1;
    u(1, 1) = std::exp(-kI * (p.gamma + p.zeta)) * ct;
    u(1, 2) = -kI * std::exp(-kI * (p.gamma - p.chi)) * st;
    u(2, 1) = -kI * std::exp(-kI * (p.gamma + p.chi)) * st;
    u(2, 2) = std::exp(-kI * (p.gamma - p.zeta)) * ct;
    u(3, 3) = std::exp(-kI * (2.0 * p.gamma + p.phi));
    return u;
}

double lambda_n(long n, double omega) {
    const double s = std::sin(omega);
    if (std::abs(s) > 1e-6) return std::sin(static_cast<double>(n) * omega) / s;
    // Chebyshev recurrence U_{k} = 2 cos(w) U_{k-1} - U_{k-2}.
    const double c2 = 2.0 * std::cos(omega);
    double um1 = 0.0, u0 = 1.0;  // U_{-1}, U_0
    if (n == 0) return 0.0;
    for (long k = 1; k < n; ++k) {
        const double next = c2 * u0 - um1;
        um1 = u0;
        u0 = next;
    }
    return u0;
}

Matrix4cd nc_gate_power(const NcGateParams& p, long n) {
    if (n < 1) throw std::invalid_argument("nc_gate_power: n must be >= 1");
    const double omega = std::acos(std::clamp(std::cos(p.theta) * std::cos(p.zeta), -1.0, 1.0));
    const double ln = lambda_n(n, omega);
    const double cn = std::cos(static_cast<double>(n) * omega);
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    Matrix4cd u = Matrix4cd::Zero();
    const cxd block_phase = std::exp(-kI * (static_cast<double>(n) * p.gamma));
    u(0, 0) = 1;
    u(1, 1) = block_phase * (cn - kI * ln * ct * std::sin(p.zeta));
    u(1, 2) = block_phase * (-kI * ln * std::exp(kI * p.chi) * st);
    u(2, 1) = block_phase * (-kI * ln * std::exp(-kI * p.chi) * st);
    u(2, 2) = block_phase * (cn + kI * ln * ct * std::sin(p.zeta));
    u(3, 3) = std::exp(-kI * (static_cast<double>(n) * (2.0 * p.gamma + p.phi)));
    return u;
}

Matrix4cd k_gate(double theta) {
    Matrix4cd u = Matrix4cd::Identity();
    const double c = std::cos(theta), s = std::sin(theta);
    u(1, 1) = c;
    u(2, 2) = c;
    u(1, 2) = -kI * s;
    u(2, 1) = -kI * s;
    return u;
}

Matrix4cd cphase(double phi) {
    Matrix4cd u = Matrix4cd::Identity();
    u(3, 3) = std::exp(-kI * phi);
    return u;
}

Matrix4cd givens(double theta) {
    Matrix4cd u = Matrix4cd::Identity();
    const double c = std::cos(theta), s = std::sin(theta);
    u(1, 1) = c;
    u(2, 2) = c;
    u(1, 2) = -s;
    u(2, 1) = s;
    return u;
}

Matrix4cd fsim(double vartheta, double varphi) {
    Matrix4cd u = k_gate(vartheta);
    const cxd e = std::exp(-kI * (varphi / 4.0));
    const cxd f = std::exp(kI * (varphi / 4.0));
    u(0, 0) *= e;
    u(3, 3) *= e;
    u(1, 1) *= f;
    u(1, 2) *= f;
    u(2, 1) *= f;
    u(2, 2) *= f;
    return u;
}

Matrix4cd iswap() { return k_gate(-M_PI / 2); }

Matrix4cd rz2(double z1, double z2) {
    Matrix4cd u = Matrix4cd::Zero();
    u(0, 0) = 1;
    u(1, 1) = std::exp(kI * z2);
    u(2, 2) = std::exp(kI * z1);
    u(3, 3) = std::exp(kI * (z1 + z2));
    return u;
}

Matrix4cd native_gate(const NativeGateParams& p) { return k_gate(p.vartheta) * cphase(p.varphi); }

double unitary_distance(const Matrix4cd& u, const Matrix4cd& v) {
    // Align global phase on the entry pair where both matrices have the most
    // weight; exact when u = e^{ia} v.
    int bi = 0, bj = 0;
    double best = -1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double w = std::min(std::abs(u(i, j)), std::abs(v(i, j)));
            if (w > best) {
                best = w;
                bi = i;
                bj = j;
            }
        }
    cxd phase(1.0, 0.0);
    const cxd prod = u(bi, bj) * std::conj(v(bi, bj));
    if (std::abs(prod) > 1e-300) phase = prod / std::abs(prod);
    double d1 = (u - phase * v).cwiseAbs().maxCoeff();
    const cxd tr = (v.adjoint() * u).trace();
    if (std::abs(tr) > 1e-12) {
        const cxd ph2 = tr / std::abs(tr);
        d1 = std::min(d1, (u - ph2 * v).cwiseAbs().maxCoeff());
    }
    return d1;
}

Matrix4cd gate_matrix_2q(const PlacedGate& g) {
    switch (g.kind) {
        case GateKind::K: return k_gate(g.p0);
        case GateKind::CPHASE: return cphase(g.p0);
        case GateKind::GIVENS: return givens(g.p0);
        case GateKind::ISWAP: return iswap();
        case GateKind::NATIVE: return native_gate({g.p0, g.p1});
        default: throw std::invalid_argument("gate_matrix_2q: not a two-qubit gate");
    }
}

Matrix2cd gate_matrix_1q(const PlacedGate& g) {
    switch (g.kind) {
        case GateKind::X: return pauli_x();
        case GateKind::RX: return rx(g.p0);
        case GateKind::RZ: return rz(g.p0);
        default: throw std::invalid_argument("gate_matrix_1q: not a single-qubit gate");
    }
}

Matrix4cd DecompositionPlan::replay() const {
    Matrix4cd u = Matrix4cd::Identity();
    for (const auto& frame : gate_sequence) {
        Matrix4cd f = Matrix4cd::Identity();
        for (const PlacedGate& g : frame) {
            if (g.two_qubit()) {
                f = gate_matrix_2q(g) * f;
            } else {
                const Matrix2cd m = gate_matrix_1q(g);
                Matrix4cd full = Matrix4cd::Zero();
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) {
                        if (g.q0 == 0) {  // first tensor factor
                            full(2 * r, 2 * c) += m(r, c);
                            full(2 * r + 1, 2 * c + 1) += m(r, c);
                        } else {
                            full(r, c) += m(r, c);
                            full(r + 2, c + 2) += m(r, c);
                        }
                    }
                f = full * f;
            }
        }
        u = f * u;
    }
    return global_phase * u;
}

int DecompositionPlan::native_count() const {
    int n = 0;
    for (const auto& frame : gate_sequence)
        for (const PlacedGate& g : frame)
            if (g.kind == GateKind::NATIVE) ++n;
    return n;
}

namespace {

// Shared body for K(theta) and Givens(theta) synthesis from two native gates.
// off_delta rotates the target off-diagonal phase: 0 for K (target -i sin t),
// -pi/2 / +pi/2 splits for Givens (targets -sin t / +sin t).
DecompositionPlan hopping_like_plan(double theta, const NativeGateParams& native, bool givens_target) {
    const double vt = native.vartheta;
    const double vp = native.varphi;
    const double s2 = std::sin(2.0 * vt);
    const double x = std::clamp(std::sin(theta) / s2, -1.0, 1.0);
    const double bm = std::acos(x);  // sin(bm) >= 0
    double bd = std::atan2(-std::sin(bm), std::cos(bm) * std::cos(2.0 * vt));
    // the middle-gate diagonal has magnitude |cos(theta)|; a negative target
    // diagonal needs an extra pi on the dressing layers
    if (std::cos(theta) < 0.0) bd += M_PI;

    double a1, a2, c1, c2;
    if (!givens_target) {
        a1 = bd / 2;
        a2 = -bd / 2;
        c1 = bd / 2;
        c2 = -bd / 2;
    } else {
        a1 = bd / 2 + M_PI / 4;
        a2 = -bd / 2 - M_PI / 4;
        c1 = bd / 2 - M_PI / 4;
        c2 = -bd / 2 + M_PI / 4;
    }

    // Native carries a Z dressing relative to F(vt, vp); folding +vp/2 into
    // the two leading Rz layers leaves a pure exp(-i vp ZZ/2) residual.
    DecompositionPlan plan;
    plan.residual_z = {0.0, 0.0};
    plan.gate_sequence = {
        {gate_rz(c1, 0), gate_rz(c2, 1)},
        {gate_native(vt, vp, 0, 1)},
        {gate_rz(bm + vp / 2, 0), gate_rz(-bm + vp / 2, 1)},
        {gate_native(vt, vp, 0, 1)},
        {gate_rz(a1 + vp / 2, 0), gate_rz(a2 + vp / 2, 1)},
    };
    plan.global_phase = std::exp(cxd(0.0, -vp / 2));
    return plan;
}

}  // namespace

DecompositionPlan decompose_k(double theta, const NativeGateParams& native) {
    return hopping_like_plan(theta, native, false);
}

DecompositionPlan decompose_givens(double theta, const NativeGateParams& native) {
    return hopping_like_plan(theta, native, true);
}

DecompositionPlan decompose_cphase_clamped(double phi, const NativeGateParams& native) {
    const double floor_phi = 2.0 * std::abs(native.varphi);
    if (std::abs(phi) < floor_phi) {
        const double sign = phi < 0.0 ? -1.0 : 1.0;
        return decompose_cphase(sign * floor_phi, native);
    }
    return decompose_cphase(phi, native);
}

DecompositionPlan decompose_cphase(double phi, const NativeGateParams& native) {
    const double vt = native.vartheta;
    const double vp = native.varphi;
    const double sp = std::sin(phi / 4.0);
    const double sv = std::sin(vp / 2.0);
    const double st = std::sin(vt);
    const double num = sp * sp - sv * sv;
    const double den = st * st - sv * sv;
    const double slack = 1e-12;
    const bool order_a = (std::abs(st) <= std::abs(sp) + slack && std::abs(sp) <= std::abs(sv) + slack);
    const bool order_b = (std::abs(sv) <= std::abs(sp) + slack && std::abs(sp) <= std::abs(st) + slack);
    if (!order_a && !order_b) {
        std::ostringstream msg;
        msg << "decompose_cphase: infeasible phi=" << phi << ": |sin(phi/4)|=" << std::abs(sp)
            << " must lie between |sin(varphi/2)|=" << std::abs(sv) << " and |sin(vartheta)|=" << std::abs(st);
        throw InfeasibleDecomposition(msg.str());
    }

    const double sa = std::sqrt(std::clamp(num / den, 0.0, 1.0));
    const double alpha = std::asin(std::clamp(sa, -1.0, 1.0));
    const double ca = std::cos(alpha);
    // atan2 realizes the printed arctan plus the (pi/2)(1 - sgn(..)) quadrant
    // corrections; the extra pi on xi2 matches the sign of sin(phi/4).
    double xi1 = std::atan2(sa * std::cos(vt), ca * std::cos(vp / 2.0));
    double xi2 = std::atan2(sa * std::sin(vt), ca * std::sin(vp / 2.0));
    if (sp < 0.0) xi2 += M_PI;

    DecompositionPlan plan;
    plan.alpha = alpha;
    plan.xi1 = xi1;
    plan.xi2 = xi2;
    plan.residual_z = {-phi / 2, -phi / 2};
    plan.gate_sequence = {
        {gate_rx(xi1, 0), gate_rx(xi2, 1)},
        {gate_native(vt, vp, 0, 1)},
        {gate_rz(vp / 2, 0), gate_rz(vp / 2, 1)},
        {gate_rx(-2.0 * alpha, 0)},
        {gate_rz(M_PI, 0)},
        {gate_native(vt, vp, 0, 1)},
        {gate_rz(vp / 2 + M_PI, 0), gate_rz(vp / 2, 1)},
        {gate_rx(xi1, 0), gate_rx(-xi2, 1)},
        {gate_rz(-phi / 2, 0), gate_rz(-phi / 2, 1)},
    };
    plan.global_phase = std::exp(cxd(0.0, phi / 4.0 - vp / 2.0));
    return plan;
}

}  // namespace fhsim::gates
