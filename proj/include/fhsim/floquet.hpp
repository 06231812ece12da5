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

#ifndef FHSIM_FLOQUET_HPP
#define FHSIM_FLOQUET_HPP

#include <array>
#include <functional>
#include <vector>

#include "fhsim/gates.hpp"
#include "fhsim/rng.hpp"

namespace fhsim::floquet {

using gates::NcGateParams;

// Omega_c = arccos(cos(theta) cos(zeta + z-)), always in [theta, pi - theta].
double rabi_angle(double theta, double zeta, double z_minus);

// Circuit-1 closed form: p_n = (sin(n Omega_c) sin(theta) / sin(Omega_c))^2.
double circuit1_probability(const NcGateParams& p, double z_minus, long n);

// Circuit-2 closed form for q_n = |<0| u_c^n |0>|^2 / 4.
double circuit2_q(const NcGateParams& p, double z_minus, long n);

struct Schedule {
    double r = 1.9;
    int K = 7;
    std::vector<long> ns;           // ceil(r^k), deduplicated
    std::vector<long> ns_coprime;   // perturbed so consecutive triples are setwise coprime

    // Window floor l for schedule index idx: l = 1 while n < 8, then the
    // last 4 points, and the last 2 at the final n.
    long window_floor(std::size_t idx) const;
};

Schedule make_schedule(double r, int K);
std::vector<long> coprime_perturb(std::vector<long> ns);

// Ideal single-phase cost C(x) = sum_m |e^{imx} - e^{im phi}|^2 (landscape
// studies of the repetition sets).
double ideal_phase_cost(const std::vector<long>& ns, double x, double phi);

// Shot source for the three calibration circuit families. Outcome counts are
// indexed by 2*bit(q1) + bit(q2), i.e. |q1 q2> in {00,01,10,11}.
class Sampler {
  public:
    virtual ~Sampler() = default;
    virtual std::array<long, 4> run(int circuit, long n, double z_minus, double z_plus, int shots) = 0;
    virtual double elapsed_seconds() const { return 0.0; }
};

// Exact 4x4 simulation of the cycle against a (possibly drifting) truth,
// with optional readout bit flips. Advances a simulated wall clock.
class SyntheticSampler : public Sampler {
  public:
    SyntheticSampler(std::function<NcGateParams(double)> truth_at, double readout_p10, double readout_p01,
                     uint64_t seed);

    std::array<long, 4> run(int circuit, long n, double z_minus, double z_plus, int shots) override;
    double elapsed_seconds() const override { return clock_s_; }
    void set_clock(double t) { clock_s_ = t; }
    double seconds_per_shot = 2e-5;  // cycle execution + readout, per shot

  private:
    std::function<NcGateParams(double)> truth_at_;
    double p10_, p01_;
    Rng rng_;
    double clock_s_ = 0.0;
};

struct CalOptions {
    int shots_per_setting = 1000;
    double sgn_lambda_threshold = 0.05;  // skip phase points with |sin(n Omega_c)| below
    double q_amplitude_eps = 1e-6;       // skip when |1 - 4 q_hat| below
    int min_postselected = 20;
    double hellinger_flag_threshold = 0.05;
};

struct SettingRecord {
    int circuit;
    long n;
    double z_minus, z_plus;
    double p_hat, q_hat;
    int kept;
};

struct CalEstimate {
    NcGateParams params;
    std::array<double, 5> se{};  // theta, zeta, chi, gamma, phi
    bool principal_region_ok = true;
    double hellinger_residual = 0.0;
    double wall_seconds = 0.0;
    std::vector<SettingRecord> trace;
};

// Samples over an (n, z-) grid for circuit 1.
struct C1Point {
    long n;
    double z_minus;
    double p_hat;
    int kept;
};

struct PhasePoint {
    long n;
    double z_minus, z_plus;
    double c_hat;      // (1 - 2(p+q)) / sqrt(1 - 4q), clamped to [-1, 1]
    double sgn_lambda; // sign of sin(n Omega_c) from the circuit-1 estimates
    double weight;     // 1 / Var(c_hat)
};

// Progressive window minimization of the circuit-1 cost; returns estimates
// and Gauss-Newton standard errors.
struct ThetaZetaFit {
    double theta, zeta, se_theta, se_zeta;
};
ThetaZetaFit estimate_theta_zeta(const std::vector<C1Point>& points, const Schedule& sched);

// Adaptive z- pair near pi/4 and 3pi/4 with n*Omega_c = pi/4 (mod pi/2).
std::pair<double, double> choose_z_minus(double theta, double zeta, long n);

// z- maximizing |sin(n Omega_c)/sin(Omega_c)| (circuits 2 and 3).
double choose_z_minus_phase(double theta, double zeta, long n);

struct PhaseFit {
    double slope_param;  // gamma (circuit 2) or gamma + phi (circuit 3)
    double offset_param; // chi
    double se_slope, se_offset;
};
// Minimizes sum (cos(sign * n x + y - n z+ + z- + (pi/2) sgn_lambda) - c_hat)^2
// over the schedule windows; sign = +1 for circuit 2, -1 for circuit 3.
PhaseFit estimate_phase(const std::vector<PhasePoint>& points, const Schedule& sched, int sign,
                        double fixed_offset = 0.0, bool offset_fixed = false);

CalEstimate calibrate(Sampler& sampler, const Schedule& sched, const CalOptions& opts = {});

// --- Decoherence-limited variance ---------------------------------------

struct DecoherenceBudget {
    double lambda1 = 0.0;  // gate time / T1
    double lambda2 = 0.0;  // gate time / T2
};

// e^{2n(l1+l2)} / (M n^2 sin^2_term); +inf when the sine vanishes.
double single_qubit_variance_bound(const DecoherenceBudget& b, long n, long shots, double sin_term);
// Two-offset (s = 0, pi/2) combined bound e^{2n(l1+l2)} / (M n^2).
double single_qubit_variance_opt(const DecoherenceBudget& b, long n, long shots);
// Resonant two-qubit case e^{n(l1+4l2)} / (4 M n^2 sin^2(2 n theta)).
double two_qubit_variance_bound(const DecoherenceBudget& b, long n, long shots, double theta);
double n_star_single(const DecoherenceBudget& b);
double n_star_two_qubit(const DecoherenceBudget& b);
double fisher_combined(const std::vector<double>& variances);

// Monte-Carlo single-qubit phase estimation at repetition n using the two
// offsets s = 0, pi/2; returns the empirical variance of phi_hat over trials.
double mc_single_qubit_phase_variance(const DecoherenceBudget& b, double phi, long n, long shots, int trials,
                                      uint64_t seed);

}  // namespace fhsim::floquet

#endif  // FHSIM_FLOQUET_HPP
