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

#ifndef FHSIM_MITIGATION_HPP
#define FHSIM_MITIGATION_HPP

#include <optional>
#include <ostream>

#include "fhsim/hubbard.hpp"

namespace fhsim {

class EmptyPostselection : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PostselectResult {
    ShotTable kept;
    double success_rate = 0.0;
};

// Keeps shots whose per-chain Hamming weights equal (n_up, n_dn). Throws
// EmptyPostselection when nothing survives.
PostselectResult postselect(const ShotTable& shots, int L, int n_up, int n_dn);

// Pointwise mean and standard error over assignment variants: all series
// must share the eta grid and L.
DensitySeries assignment_average(const std::vector<DensitySeries>& series);

struct RescaleFit {
    double a = 0.0;  // damping slope per Trotter step
    double b = 1.0;  // intercept
    double sigma_a = 0.0, sigma_b = 0.0;
    std::vector<int> etas;
    std::vector<double> damping;    // per-eta least-squares damping factor
    std::vector<double> residuals;  // per-eta fit residual of b - a*eta
    std::vector<int> etas_used;     // damping >= 0.2 mask
};

// Per-eta damping by least squares of (exp - nbar) on (num - nbar) across
// sites and spins, then a linear fit b - a*eta over the etas with
// damping >= 0.2. nbar_nu = N_nu / L.
RescaleFit fit_rescale(const DensitySeries& exp_series, const DensitySeries& num_series, int n_up, int n_dn, int L);

// n_rescaled = nbar + (n_exp - nbar) / (b - a*eta); refuses when the damping
// factor drops to <= 0.05.
DensitySeries apply_rescale(const DensitySeries& series, const RescaleFit& fit, int n_up, int n_dn, int L);

// CSV report: eta, site, spin, raw, postselected, averaged, rescaled, sem.
void write_mitigation_csv(std::ostream& os, const DensitySeries& raw, const DensitySeries& postselected,
                          const DensitySeries& averaged, const DensitySeries& rescaled);

}  // namespace fhsim

#endif  // FHSIM_MITIGATION_HPP
