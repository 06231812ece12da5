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

#include "fhsim/mitigation.hpp"

#include <bit>
#include <cmath>
#include <iomanip>

namespace fhsim {

PostselectResult postselect(const ShotTable& shots, int L, int n_up, int n_dn) {
    if (n_up < 0 || n_up > L || n_dn < 0 || n_dn > L)
        throw std::invalid_argument("postselect: target numbers out of range");
    const uint64_t up_mask = (uint64_t{1} << L) - 1;
    PostselectResult r;
    r.kept.n_qubits = shots.n_qubits;
    r.kept.seed = shots.seed;
    for (const uint64_t bits : shots.bitstrings) {
        const int wu = std::popcount(bits & up_mask);
        const int wd = std::popcount((bits >> L) & up_mask);
        if (wu == n_up && wd == n_dn) r.kept.bitstrings.push_back(bits);
    }
    if (shots.bitstrings.empty()) throw std::invalid_argument("postselect: empty input table");
    r.success_rate = static_cast<double>(r.kept.shots()) / static_cast<double>(shots.shots());
    if (r.kept.bitstrings.empty())
        throw EmptyPostselection("postselect: no shots with the requested particle numbers");
    return r;
}

DensitySeries assignment_average(const std::vector<DensitySeries>& series) {
    if (series.empty()) throw std::invalid_argument("assignment_average: no series");
    const DensitySeries& first = series.front();
    for (const auto& s : series)
        if (s.etas != first.etas || s.rho.size() != first.rho.size() ||
            (s.rho.empty() ? 0 : s.rho[0].up.size()) != (first.rho.empty() ? 0 : first.rho[0].up.size()))
            throw std::invalid_argument("assignment_average: mismatched grids");

    const std::size_t n = series.size();
    const std::size_t ne = first.rho.size();
    const std::size_t L = first.rho.empty() ? 0 : first.rho[0].up.size();
    DensitySeries out;
    out.etas = first.etas;
    out.times = first.times;
    out.rho.resize(ne);
    out.sem.resize(ne);
    for (std::size_t e = 0; e < ne; ++e) {
        out.rho[e].up.assign(L, 0.0);
        out.rho[e].dn.assign(L, 0.0);
        out.sem[e].up.assign(L, 0.0);
        out.sem[e].dn.assign(L, 0.0);
        for (std::size_t j = 0; j < L; ++j) {
            double mu = 0, md = 0;
            for (const auto& s : series) {
                mu += s.rho[e].up[j];
                md += s.rho[e].dn[j];
            }
            mu /= n;
            md /= n;
            double vu = 0, vd = 0;
            for (const auto& s : series) {
                vu += (s.rho[e].up[j] - mu) * (s.rho[e].up[j] - mu);
                vd += (s.rho[e].dn[j] - md) * (s.rho[e].dn[j] - md);
            }
            out.rho[e].up[j] = mu;
            out.rho[e].dn[j] = md;
            if (n > 1) {
                out.sem[e].up[j] = std::sqrt(vu / (n - 1) / n);
                out.sem[e].dn[j] = std::sqrt(vd / (n - 1) / n);
            }
        }
    }
    out.compute_kappas(static_cast<int>(L));
    return out;
}

RescaleFit fit_rescale(const DensitySeries& exp_series, const DensitySeries& num_series, int n_up, int n_dn, int L) {
    if (exp_series.etas != num_series.etas)
        throw std::invalid_argument("fit_rescale: series must share the eta grid");
    const double nbar_up = static_cast<double>(n_up) / L;
    const double nbar_dn = static_cast<double>(n_dn) / L;

    RescaleFit fit;
    fit.etas = exp_series.etas;
    for (std::size_t e = 0; e < exp_series.rho.size(); ++e) {
        double sxy = 0.0, sxx = 0.0;
        for (int j = 0; j < L; ++j) {
            const double xu = num_series.rho[e].up[j] - nbar_up;
            const double xd = num_series.rho[e].dn[j] - nbar_dn;
            if (std::abs(xu) >= 1e-6) {
                sxy += xu * (exp_series.rho[e].up[j] - nbar_up);
                sxx += xu * xu;
            }
            if (std::abs(xd) >= 1e-6) {
                sxy += xd * (exp_series.rho[e].dn[j] - nbar_dn);
                sxx += xd * xd;
            }
        }
        fit.damping.push_back(sxx > 0.0 ? sxy / sxx : 0.0);
    }

    // Linear fit d = b - a*eta over usable etas.
    double sw = 0, sx = 0, sy = 0, sxx2 = 0, sxy2 = 0;
    for (std::size_t e = 0; e < fit.damping.size(); ++e) {
        if (fit.damping[e] < 0.2) continue;
        fit.etas_used.push_back(fit.etas[e]);
        const double x = fit.etas[e];
        const double y = fit.damping[e];
        sw += 1;
        sx += x;
        sy += y;
        sxx2 += x * x;
        sxy2 += x * y;
    }
    if (fit.etas_used.size() < 2) throw std::invalid_argument("fit_rescale: fewer than 2 usable eta points");
    const double det = sw * sxx2 - sx * sx;
    const double slope = (sw * sxy2 - sx * sy) / det;
    const double intercept = (sy * sxx2 - sx * sxy2) / det;
    fit.a = -slope;
    fit.b = intercept;

    double ssr = 0.0;
    for (std::size_t e = 0; e < fit.damping.size(); ++e) {
        const double r = fit.damping[e] - (fit.b - fit.a * fit.etas[e]);
        fit.residuals.push_back(r);
        if (fit.damping[e] >= 0.2) ssr += r * r;
    }
    const double dof = std::max<double>(1.0, sw - 2.0);
    const double s2 = ssr / dof;
    fit.sigma_a = std::sqrt(s2 * sw / det);
    fit.sigma_b = std::sqrt(s2 * sxx2 / det);
    return fit;
}

DensitySeries apply_rescale(const DensitySeries& series, const RescaleFit& fit, int n_up, int n_dn, int L) {
    const double nbar_up = static_cast<double>(n_up) / L;
    const double nbar_dn = static_cast<double>(n_dn) / L;
    DensitySeries out = series;
    for (std::size_t e = 0; e < series.rho.size(); ++e) {
        const double d = fit.b - fit.a * series.etas[e];
        if (d <= 0.05)
            throw std::invalid_argument("apply_rescale: damping factor <= 0.05, refusing to amplify noise");
        for (int j = 0; j < L; ++j) {
            out.rho[e].up[j] = nbar_up + (series.rho[e].up[j] - nbar_up) / d;
            out.rho[e].dn[j] = nbar_dn + (series.rho[e].dn[j] - nbar_dn) / d;
            if (!out.sem.empty() && !out.sem[e].up.empty()) {
                out.sem[e].up[j] = series.sem[e].up[j] / d;
                out.sem[e].dn[j] = series.sem[e].dn[j] / d;
            }
        }
    }
    out.compute_kappas(L);
    return out;
}

void write_mitigation_csv(std::ostream& os, const DensitySeries& raw, const DensitySeries& postselected,
                          const DensitySeries& averaged, const DensitySeries& rescaled) {
    os << "# fhsim mitigation report csv v1\n";
    os << "eta,site,spin,raw,postselected,averaged,rescaled,sem\n";
    os << std::setprecision(12);
    const int L = static_cast<int>(raw.rho.empty() ? 0 : raw.rho[0].up.size());
    for (std::size_t e = 0; e < raw.rho.size(); ++e)
        for (int spin = 0; spin < 2; ++spin)
            for (int j = 0; j < L; ++j) {
                auto pick = [&](const DensitySeries& s) {
                    return spin == kSpinUp ? s.rho[e].up[j] : s.rho[e].dn[j];
                };
                const double sem = averaged.sem.empty()
                                       ? 0.0
                                       : (spin == kSpinUp ? averaged.sem[e].up[j] : averaged.sem[e].dn[j]);
                os << raw.etas[e] << "," << (j + 1) << "," << (spin == kSpinUp ? "up" : "down") << ","
                   << pick(raw) << "," << pick(postselected) << "," << pick(averaged) << "," << pick(rescaled)
                   << "," << sem << "\n";
            }
}

}  // namespace fhsim
