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

#include "fhsim/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fhsim::floquet {

namespace {

const std::complex<double> kI(0.0, 1.0);

double wrap(double a) { return gates::wrap_angle(a); }

// Cycle parameters: U_c = U(theta, zeta + z-, chi + z-, gamma - z+, phi).
NcGateParams cycle_params(const NcGateParams& p, double z_minus, double z_plus) {
    NcGateParams c = p;
    c.zeta += z_minus;
    c.chi += z_minus;
    c.gamma -= z_plus;
    return c;
}

// --- small derivative-free minimizers ------------------------------------

struct Min2D {
    double x, y, f;
};

template <class F>
Min2D nelder_mead_2d(F&& f, double x0, double y0, double scale_x, double scale_y, int iters) {
    struct P {
        double x, y, f;
    };
    std::array<P, 3> s = {P{x0, y0, 0}, P{x0 + scale_x, y0, 0}, P{x0, y0 + scale_y, 0}};
    for (auto& p : s) p.f = f(p.x, p.y);
    for (int it = 0; it < iters; ++it) {
        std::sort(s.begin(), s.end(), [](const P& a, const P& b) { return a.f < b.f; });
        const double cx = (s[0].x + s[1].x) / 2, cy = (s[0].y + s[1].y) / 2;
        P refl{cx + (cx - s[2].x), cy + (cy - s[2].y), 0};
        refl.f = f(refl.x, refl.y);
        if (refl.f < s[0].f) {
            P exp_{cx + 2 * (cx - s[2].x), cy + 2 * (cy - s[2].y), 0};
            exp_.f = f(exp_.x, exp_.y);
            s[2] = exp_.f < refl.f ? exp_ : refl;
        } else if (refl.f < s[1].f) {
            s[2] = refl;
        } else {
            P con{cx + 0.5 * (s[2].x - cx), cy + 0.5 * (s[2].y - cy), 0};
            con.f = f(con.x, con.y);
            if (con.f < s[2].f) {
                s[2] = con;
            } else {
                for (int k = 1; k < 3; ++k) {
                    s[k].x = s[0].x + 0.5 * (s[k].x - s[0].x);
                    s[k].y = s[0].y + 0.5 * (s[k].y - s[0].y);
                    s[k].f = f(s[k].x, s[k].y);
                }
            }
        }
    }
    std::sort(s.begin(), s.end(), [](const P& a, const P& b) { return a.f < b.f; });
    return {s[0].x, s[0].y, s[0].f};
}

template <class F>
double golden_min(F&& f, double a, double b, int iters = 60) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

}  // namespace

double rabi_angle(double theta, double zeta, double z_minus) {
    return std::acos(std::clamp(std::cos(theta) * std::cos(zeta + z_minus), -1.0, 1.0));
}

double circuit1_probability(const NcGateParams& p, double z_minus, long n) {
    const double om = rabi_angle(p.theta, p.zeta, z_minus);
    const double ln = gates::lambda_n(n, om);
    const double a = ln * std::sin(p.theta);
    return a * a;
}

double circuit2_q(const NcGateParams& p, double z_minus, long n) {
    const double om = rabi_angle(p.theta, p.zeta, z_minus);
    const double ln = gates::lambda_n(n, om);
    const std::complex<double> amp =
        std::cos(n * om) - kI * (ln * std::cos(p.theta) * std::sin(p.zeta + z_minus));
    return std::norm(amp) / 4.0;
}

Schedule make_schedule(double r, int K) {
    if (r <= 1.0) throw std::invalid_argument("make_schedule: r must be > 1");
    if (K < 2) throw std::invalid_argument("make_schedule: K must be >= 2");
    Schedule s;
    s.r = r;
    s.K = K;
    for (int k = 0; k < K; ++k) {
        const long n = static_cast<long>(std::ceil(std::pow(r, k) - 1e-12));
        if (s.ns.empty() || s.ns.back() != n) s.ns.push_back(n);
    }
    s.ns_coprime = coprime_perturb(s.ns);
    return s;
}

std::vector<long> coprime_perturb(std::vector<long> ns) {
    auto triple_ok = [](long a, long b, long c) { return std::gcd(std::gcd(a, b), c) == 1; };
    for (std::size_t i = 2; i < ns.size(); ++i) {
        while (!triple_ok(ns[i - 2], ns[i - 1], ns[i]) || ns[i] <= ns[i - 1]) ns[i]++;
    }
    return ns;
}

long Schedule::window_floor(std::size_t idx) const {
    if (ns[idx] < 8) return ns.front();
    if (idx + 1 == ns.size() && idx >= 1) return ns[idx - 1];
    return ns[idx >= 3 ? idx - 3 : 0];
}

double ideal_phase_cost(const std::vector<long>& ns, double x, double phi) {
    double c = 0.0;
    for (const long m : ns) {
        const std::complex<double> d = std::exp(kI * (m * x)) - std::exp(kI * (m * phi));
        c += std::norm(d);
    }
    return c;
}

// --- synthetic sampler ----------------------------------------------------

SyntheticSampler::SyntheticSampler(std::function<NcGateParams(double)> truth_at, double readout_p10,
                                   double readout_p01, uint64_t seed)
    : truth_at_(std::move(truth_at)), p10_(readout_p10), p01_(readout_p01), rng_(seed) {}

std::array<long, 4> SyntheticSampler::run(int circuit, long n, double z_minus, double z_plus, int shots) {
    const NcGateParams truth = truth_at_(clock_s_);
    const Eigen::Matrix4cd ucn = gates::nc_gate_power(cycle_params(truth, z_minus, z_plus), n);

    auto rx_on = [&](double xi, int which) {
        const Eigen::Matrix2cd r = gates::rx(xi);
        Eigen::Matrix4cd full = Eigen::Matrix4cd::Zero();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                if (which == 0) {
                    full(2 * a, 2 * b) += r(a, b);
                    full(2 * a + 1, 2 * b + 1) += r(a, b);
                } else {
                    full(a, b) += r(a, b);
                    full(a + 2, b + 2) += r(a, b);
                }
            }
        return full;
    };

    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = 1.0;
    switch (circuit) {
        case 1:
            psi = ucn * (rx_on(M_PI, 1) * psi);
            break;
        case 2:
            psi = rx_on(M_PI / 2, 0) * (ucn * (rx_on(M_PI / 2, 1) * psi));
            break;
        case 3:
            psi = rx_on(M_PI / 2, 1) * (ucn * ((rx_on(M_PI / 2, 0) * rx_on(M_PI, 1)) * psi));
            break;
        default:
            throw std::invalid_argument("unknown calibration circuit id");
    }

    std::array<double, 4> cdf{};
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        acc += std::norm(psi(k));
        cdf[k] = acc;
    }
    std::array<long, 4> counts{};
    for (int s = 0; s < shots; ++s) {
        int k = static_cast<int>(rng_.sample_cdf(cdf));
        if (p10_ > 0.0 || p01_ > 0.0) {
            int b1 = (k >> 1) & 1, b2 = k & 1;
            if (rng_.bernoulli(b1 ? p10_ : p01_)) b1 ^= 1;
            if (rng_.bernoulli(b2 ? p10_ : p01_)) b2 ^= 1;
            k = 2 * b1 + b2;
        }
        counts[k]++;
    }
    clock_s_ += shots * (seconds_per_shot + 5e-8 * static_cast<double>(n));
    return counts;
}

// --- circuit-1 estimation --------------------------------------------------

namespace {

double c1_cost(const std::vector<C1Point>& pts, long ell, long n, double x, double y) {
    double c = 0.0;
    for (const auto& pt : pts) {
        if (pt.n < ell || pt.n > n) continue;
        const double om = rabi_angle(x, y, pt.z_minus);
        const double model = std::abs(gates::lambda_n(pt.n, om) * std::sin(x));
        const double d = model - std::sqrt(std::max(0.0, pt.p_hat));
        c += d * d * pt.kept;
    }
    return c;
}

}  // namespace

ThetaZetaFit estimate_theta_zeta(const std::vector<C1Point>& points, const Schedule& sched) {
    if (points.empty()) throw std::invalid_argument("estimate_theta_zeta: no points");
    {
        std::vector<double> zs;
        for (const auto& p : points) zs.push_back(p.z_minus);
        std::sort(zs.begin(), zs.end());
        if (std::abs(zs.front() - zs.back()) < 1e-9)
            throw std::invalid_argument("estimate_theta_zeta: need at least two distinct z- values");
    }
    double th = 0.5, ze = 0.0;
    bool have_prior = false;
    for (std::size_t idx = 0; idx < sched.ns.size(); ++idx) {
        const long n = sched.ns[idx];
        const long ell = sched.window_floor(idx);
        bool any = false;
        for (const auto& p : points)
            if (p.n == n) any = true;
        if (!any) continue;
        auto f = [&](double x, double y) { return c1_cost(points, ell, n, x, y); };
        if (!have_prior || n < 8) {
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 90; ++i)
                for (int j = 0; j < 360; ++j) {
                    const double x = i * (M_PI / 2) / 90.0;
                    const double y = -M_PI + j * (2 * M_PI) / 360.0;
                    const double c = f(x, y);
                    if (c < best) {
                        best = c;
                        th = x;
                        ze = y;
                    }
                }
            const auto m = nelder_mead_2d(f, th, ze, 0.02, 0.02, 120);
            th = std::clamp(m.x, 0.0, M_PI / 2);
            ze = wrap(m.y);
            have_prior = true;
        } else {
            const double box = M_PI / (2.0 * static_cast<double>(n));
            auto fb = [&](double x, double y) {
                if (std::abs(x - th) > box || std::abs(y - ze) > box) return 1e18;
                return f(std::clamp(x, 0.0, M_PI / 2), y);
            };
            const auto m = nelder_mead_2d(fb, th, ze, box / 3, box / 3, 140);
            th = std::clamp(m.x, 0.0, M_PI / 2);
            ze = wrap(m.y);
        }
    }

    // Gauss-Newton errors on the final window.
    const std::size_t last = sched.ns.size() - 1;
    const long n_last = sched.ns[last];
    const long ell_last = sched.window_floor(last);
    double jtj[3] = {0, 0, 0};  // [J_th^2, J_th J_ze, J_ze^2], weighted
    for (const auto& pt : points) {
        if (pt.n < ell_last || pt.n > n_last) continue;
        auto model = [&](double x, double y) {
            const double om = rabi_angle(x, y, pt.z_minus);
            return std::abs(gates::lambda_n(pt.n, om) * std::sin(x));
        };
        const double h = 1e-6;
        const double jt = (model(th + h, ze) - model(th - h, ze)) / (2 * h);
        const double jz = (model(th, ze + h) - model(th, ze - h)) / (2 * h);
        const double w = 4.0 * pt.kept;  // 1 / Var(sqrt(p_hat))
        jtj[0] += w * jt * jt;
        jtj[1] += w * jt * jz;
        jtj[2] += w * jz * jz;
    }
    const double det = jtj[0] * jtj[2] - jtj[1] * jtj[1];
    ThetaZetaFit fit{th, ze, 0.0, 0.0};
    if (det > 1e-12) {
        fit.se_theta = std::sqrt(jtj[2] / det);
        fit.se_zeta = std::sqrt(jtj[0] / det);
    }
    return fit;
}

std::pair<double, double> choose_z_minus(double theta, double zeta, long n) {
    if (n < 3) return {M_PI / 4, 3 * M_PI / 4};
    const double w = M_PI / (2.0 * std::max(0.2, std::cos(theta)));
    auto tune = [&](double base) {
        const double z0 = base - zeta;
        const double half = w / static_cast<double>(n);
        auto badness = [&](double z) {
            const double om = rabi_angle(theta, zeta, z);
            return -std::abs(std::sin(2.0 * static_cast<double>(n) * om));
        };
        double zb = z0, fb = badness(z0);
        for (int i = 0; i <= 64; ++i) {
            const double z = z0 - half + 2 * half * i / 64.0;
            const double f = badness(z);
            if (f < fb) {
                fb = f;
                zb = z;
            }
        }
        return golden_min(badness, zb - half / 32, zb + half / 32, 40);
    };
    return {tune(M_PI / 4), tune(3 * M_PI / 4)};
}

double choose_z_minus_phase(double theta, double zeta, long n) {
    auto badness = [&](double z) {
        const double om = rabi_angle(theta, zeta, z);
        return -std::abs(gates::lambda_n(n, om) * std::sin(theta));
    };
    double zb = M_PI / 4, fb = badness(zb);
    for (int i = 0; i < 257; ++i) {
        const double z = -M_PI + (2 * M_PI * i) / 257.0;
        const double f = badness(z);
        if (f < fb) {
            fb = f;
            zb = z;
        }
    }
    return golden_min(badness, zb - 0.02, zb + 0.02, 40);
}

// --- phase estimation (circuits 2 and 3) -----------------------------------

namespace {

// mu_n = sign*(n x - n z+) + y + z- + (pi/2) sgn(Lambda_n): sign = +1 for
// circuit 2 (x = gamma), -1 for circuit 3 (x = gamma + phi).
double phase_mu(const PhasePoint& pt, int sign, double x, double y) {
    return sign * static_cast<double>(pt.n) * (x - pt.z_plus) + y + pt.z_minus +
           (M_PI / 2) * pt.sgn_lambda;
}

double phase_cost(const std::vector<PhasePoint>& pts, long ell, long n, int sign, double x, double y) {
    double c = 0.0;
    for (const auto& pt : pts) {
        if (pt.n < ell || pt.n > n) continue;
        const double d = std::cos(phase_mu(pt, sign, x, y)) - pt.c_hat;
        c += pt.weight * d * d;
    }
    return c;
}

}  // namespace

PhaseFit estimate_phase(const std::vector<PhasePoint>& points, const Schedule& sched, int sign,
                        double fixed_offset, bool offset_fixed) {
    if (points.empty()) throw std::invalid_argument("estimate_phase: no points");
    double x = 0.0, y = fixed_offset;
    bool have_prior = false;
    for (std::size_t idx = 0; idx < sched.ns.size(); ++idx) {
        const long n = sched.ns[idx];
        const long ell = sched.window_floor(idx);
        bool any = false;
        for (const auto& p : points)
            if (p.n == n) any = true;
        if (!any) continue;
        auto f = [&](double xx, double yy) { return phase_cost(points, ell, n, sign, xx, yy); };
        if (!have_prior || n < 8) {
            double best = std::numeric_limits<double>::infinity();
            const int nx = 2048, ny = offset_fixed ? 1 : 128;
            for (int i = 0; i < nx; ++i)
                for (int j = 0; j < ny; ++j) {
                    const double xx = -M_PI + (2 * M_PI * i) / nx;
                    const double yy = offset_fixed ? fixed_offset : -M_PI + (2 * M_PI * j) / ny;
                    const double c = f(xx, yy);
                    if (c < best) {
                        best = c;
                        x = xx;
                        y = yy;
                    }
                }
            if (offset_fixed) {
                x = golden_min([&](double xx) { return f(xx, y); }, x - M_PI / nx * 4, x + M_PI / nx * 4, 50);
            } else {
                const auto m = nelder_mead_2d(f, x, y, 0.02, 0.05, 140);
                x = m.x;
                y = m.y;
            }
            have_prior = true;
        } else {
            const double box = M_PI / static_cast<double>(n);
            if (offset_fixed) {
                x = golden_min([&](double xx) { return f(xx, y); }, x - box, x + box, 60);
            } else {
                auto fb = [&](double xx, double yy) {
                    if (std::abs(xx - x) > box || std::abs(yy - y) > 0.4) return 1e18;
                    return f(xx, yy);
                };
                const auto m = nelder_mead_2d(fb, x, y, box / 3, 0.05, 140);
                x = m.x;
                y = m.y;
            }
        }
    }

    // Weighted curvature errors on the final window.
    const std::size_t last = sched.ns.size() - 1;
    const long n_last = sched.ns[last];
    const long ell_last = sched.window_floor(last);
    double jtj[3] = {0, 0, 0};
    for (const auto& pt : points) {
        if (pt.n < ell_last || pt.n > n_last) continue;
        const double mu = phase_mu(pt, sign, x, y);
        const double dmu = -std::sin(mu);
        const double jx = dmu * sign * static_cast<double>(pt.n);
        const double jy = dmu;
        jtj[0] += pt.weight * jx * jx;
        jtj[1] += pt.weight * jx * jy;
        jtj[2] += pt.weight * jy * jy;
    }
    PhaseFit fit{wrap(x), wrap(y), 0.0, 0.0};
    if (offset_fixed) {
        if (jtj[0] > 0) fit.se_slope = 1.0 / std::sqrt(jtj[0]);
    } else {
        const double det = jtj[0] * jtj[2] - jtj[1] * jtj[1];
        if (det > 1e-12) {
            fit.se_slope = std::sqrt(jtj[2] / det);
            fit.se_offset = std::sqrt(jtj[0] / det);
        }
    }
    return fit;
}

// --- full calibration driver -------------------------------------------------

namespace {

double chat_variance(double p, double q, long shots) {
    // Delta method on c = (1 - 2(p+q)) / sqrt(1 - 4q) with multinomial (p, q).
    const double s = std::sqrt(std::max(1e-9, 1.0 - 4.0 * q));
    const double dcdp = -2.0 / s;
    const double c = (1.0 - 2.0 * (p + q)) / s;
    const double dcdq = (-2.0 / s) + 2.0 * c / (s * s);
    const double m = static_cast<double>(shots);
    const double vp = p * (1 - p) / m, vq = q * (1 - q) / m, cpq = -p * q / m;
    return std::max(1e-10, dcdp * dcdp * vp + dcdq * dcdq * vq + 2 * dcdp * dcdq * cpq);
}

}  // namespace

CalEstimate calibrate(Sampler& sampler, const Schedule& sched, const CalOptions& opts) {
    CalEstimate out;
    const double t0 = sampler.elapsed_seconds();

    // Circuit set 1: theta and zeta.
    std::vector<C1Point> pts1;
    ThetaZetaFit tz{0.5, 0.0, 0, 0};
    bool have_tz = false;
    for (std::size_t idx = 0; idx < sched.ns.size(); ++idx) {
        const long n = sched.ns[idx];
        const auto zs = have_tz ? choose_z_minus(tz.theta, tz.zeta, n)
                                : std::pair<double, double>{M_PI / 4, 3 * M_PI / 4};
        for (const double z : {zs.first, zs.second}) {
            const auto counts = sampler.run(1, n, z, 0.0, opts.shots_per_setting);
            const long kept = counts[1] + counts[2];
            out.trace.push_back({1, n, z, 0.0,
                                 kept > 0 ? static_cast<double>(counts[2]) / kept : 0.0,
                                 static_cast<double>(counts[1]) / opts.shots_per_setting,
                                 static_cast<int>(kept)});
            if (kept < opts.min_postselected) continue;
            pts1.push_back({n, z, static_cast<double>(counts[2]) / kept, static_cast<int>(kept)});
        }
        tz = estimate_theta_zeta(pts1, sched);
        have_tz = true;
    }

    // Circuit set 2: gamma and chi.
    std::vector<PhasePoint> pts2;
    PhaseFit gc{0.0, 0.0, 0, 0};
    {
        bool have_prior = false;
        for (std::size_t idx = 0; idx < sched.ns.size(); ++idx) {
            const long n = sched.ns[idx];
            const double zm = choose_z_minus_phase(tz.theta, tz.zeta, n);
            const double om = rabi_angle(tz.theta, tz.zeta, zm);
            const double snl = std::sin(static_cast<double>(n) * om);
            if (std::abs(snl) < opts.sgn_lambda_threshold) continue;
            const double sgn = snl > 0 ? 1.0 : -1.0;
            double zp_base = 0.0;
            if (have_prior) {
                // Aim mu_n at pi/2 (mod pi) using the prior estimates.
                const double mu0 =
                    static_cast<double>(n) * gc.slope_param + gc.offset_param + zm + (M_PI / 2) * sgn;
                zp_base = (mu0 - M_PI / 2) / static_cast<double>(n);
            }
            for (const double zp : {zp_base, zp_base + M_PI / (2.0 * static_cast<double>(n))}) {
                const auto counts = sampler.run(2, n, zm, zp, opts.shots_per_setting);
                const double m = static_cast<double>(opts.shots_per_setting);
                const double p_hat = counts[0] / m;  // outcome 00
                const double q_hat = counts[1] / m;  // outcome 01
                out.trace.push_back({2, n, zm, zp, p_hat, q_hat, opts.shots_per_setting});
                if (std::abs(1.0 - 4.0 * q_hat) < opts.q_amplitude_eps) continue;
                const double c_raw =
                    (1.0 - 2.0 * (p_hat + q_hat)) / std::sqrt(std::max(1e-12, 1.0 - 4.0 * q_hat));
                pts2.push_back({n, zm, zp, std::clamp(c_raw, -1.0, 1.0), sgn,
                                1.0 / chat_variance(p_hat, q_hat, opts.shots_per_setting)});
            }
            gc = estimate_phase(pts2, sched, +1);
            have_prior = true;
        }
    }

    // Circuit set 3: gamma + phi, with chi fixed from circuit 2.
    std::vector<PhasePoint> pts3;
    PhaseFit gp{0.0, gc.offset_param, 0, 0};
    {
        bool have_prior = false;
        double prior = 0.0;
        for (std::size_t idx = 0; idx < sched.ns.size(); ++idx) {
            const long n = sched.ns[idx];
            const double zm = choose_z_minus_phase(tz.theta, tz.zeta, n);
            const double om = rabi_angle(tz.theta, tz.zeta, zm);
            const double snl = std::sin(static_cast<double>(n) * om);
            if (std::abs(snl) < opts.sgn_lambda_threshold) continue;
            const double sgn = snl > 0 ? 1.0 : -1.0;
            double zp_base = 0.0;
            if (have_prior) {
                const double mu0 = -static_cast<double>(n) * prior + gc.offset_param + zm + (M_PI / 2) * sgn;
                zp_base = (M_PI / 2 - mu0) / static_cast<double>(n);
            }
            for (const double zp : {zp_base, zp_base + M_PI / (2.0 * static_cast<double>(n))}) {
                const auto counts = sampler.run(3, n, zm, zp, opts.shots_per_setting);
                const double m = static_cast<double>(opts.shots_per_setting);
                const double p_hat = counts[2] / m;  // outcome 10
                const double q_hat = counts[0] / m;  // outcome 00
                out.trace.push_back({3, n, zm, zp, p_hat, q_hat, opts.shots_per_setting});
                if (std::abs(1.0 - 4.0 * q_hat) < opts.q_amplitude_eps) continue;
                const double c_raw = (1.0 - 2.0 * (p_hat + q_hat)) / std::sqrt(std::max(1e-12, 1.0 - 4.0 * q_hat));
                pts3.push_back({n, zm, zp, std::clamp(c_raw, -1.0, 1.0), sgn,
                                1.0 / chat_variance(p_hat, q_hat, opts.shots_per_setting)});
            }
            gp = estimate_phase(pts3, sched, -1, gc.offset_param, true);
            have_prior = true;
            prior = gp.slope_param;
        }
    }

    // Assemble the estimate. The circuit-3 slope is gamma + phi, but mu_n uses
    // z+ with the opposite sign, handled inside estimate_phase via `sign`.
    out.params.theta = tz.theta;
    out.params.zeta = wrap(tz.zeta);
    out.params.gamma = wrap(gc.slope_param);
    out.params.chi = wrap(gc.offset_param);
    out.params.phi = wrap(gp.slope_param - gc.slope_param);
    out.se = {tz.se_theta, tz.se_zeta, gc.se_offset, gc.se_slope,
              std::sqrt(gp.se_slope * gp.se_slope + gc.se_slope * gc.se_slope)};

    // Principal-region audit: predicted circuit-1 amplitudes vs observations.
    double h2 = 0.0;
    long npts = 0;
    for (const auto& pt : pts1) {
        const double model = circuit1_probability(
            {tz.theta, tz.zeta, 0, 0, 0}, pt.z_minus, pt.n);
        const double d = std::sqrt(std::max(0.0, pt.p_hat)) - std::sqrt(model);
        h2 += d * d;
        npts++;
    }
    out.hellinger_residual = npts ? std::sqrt(h2 / npts) : 0.0;
    out.principal_region_ok = out.hellinger_residual < opts.hellinger_flag_threshold;
    out.wall_seconds = sampler.elapsed_seconds() - t0;
    return out;
}

// --- decoherence-limited variance ------------------------------------------

double single_qubit_variance_bound(const DecoherenceBudget& b, long n, long shots, double sin_term) {
    if (std::abs(sin_term) < 1e-12) return std::numeric_limits<double>::infinity();
    const double nn = static_cast<double>(n);
    return std::exp(2.0 * nn * (b.lambda1 + b.lambda2)) /
           (static_cast<double>(shots) * nn * nn * sin_term * sin_term);
}

double single_qubit_variance_opt(const DecoherenceBudget& b, long n, long shots) {
    const double nn = static_cast<double>(n);
    return std::exp(2.0 * nn * (b.lambda1 + b.lambda2)) / (static_cast<double>(shots) * nn * nn);
}

double two_qubit_variance_bound(const DecoherenceBudget& b, long n, long shots, double theta) {
    const double nn = static_cast<double>(n);
    const double s = std::sin(2.0 * nn * theta);
    if (std::abs(s) < 1e-12) return std::numeric_limits<double>::infinity();
    return std::exp(nn * (b.lambda1 + 4.0 * b.lambda2)) /
           (4.0 * static_cast<double>(shots) * nn * nn * s * s);
}

double n_star_single(const DecoherenceBudget& b) { return 1.0 / (b.lambda1 + b.lambda2); }
double n_star_two_qubit(const DecoherenceBudget& b) { return 2.0 / (b.lambda1 + 4.0 * b.lambda2); }

double fisher_combined(const std::vector<double>& variances) {
    double f = 0.0;
    for (const double v : variances)
        if (std::isfinite(v) && v > 0) f += 1.0 / v;
    return f > 0 ? 1.0 / f : std::numeric_limits<double>::infinity();
}

double mc_single_qubit_phase_variance(const DecoherenceBudget& b, double phi, long n, long shots, int trials,
                                      uint64_t seed) {
    Rng rng(seed);
    const double nn = static_cast<double>(n);
    const double decay1 = std::exp(-nn * b.lambda1);
    const double decay2 = std::exp(-nn * b.lambda2);
    auto p_of = [&](double s) {
        const double q = 0.5 * (1.0 + decay2 * std::cos(nn * phi + s));
        return decay1 * q + 0.5 * (1.0 - decay1);
    };
    const double p0 = p_of(0.0), p1 = p_of(M_PI / 2);
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        long c0 = 0, c1 = 0;
        for (long s = 0; s < shots; ++s) c0 += rng.bernoulli(p0);
        for (long s = 0; s < shots; ++s) c1 += rng.bernoulli(p1);
        const double x = (2.0 * c0 / shots - 1.0);  // ~ decay cos(n phi)
        const double y = -(2.0 * c1 / shots - 1.0); // ~ decay sin(n phi)
        double est = std::atan2(y, x) / nn;
        // Fold into the principal region around the true phase.
        const double width = 2.0 * M_PI / nn;
        est -= width * std::round((est - phi) / width);
        sum += est;
        sum2 += est * est;
    }
    const double mean = sum / trials;
    return sum2 / trials - mean * mean;
}

}  // namespace fhsim::floquet
