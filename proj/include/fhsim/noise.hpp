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

#ifndef FHSIM_NOISE_HPP
#define FHSIM_NOISE_HPP

#include <string>

#include "fhsim/gates.hpp"
#include "fhsim/hubbard.hpp"

namespace fhsim {

struct DriftSpec {
    enum class Kind { none, sinusoidal, random_walk };
    Kind kind = Kind::none;
    double amplitude = 0.0;   // radians
    double period_s = 3600.0; // sinusoidal period / random-walk tick length
};

// Synthetic device: per-pair true gate parameters, slow drift, per-qubit
// decoherence times, and readout flips. All draws are keyed determinstically
// off `seed`, so a profile is a pure function of its fields.
struct DeviceProfile {
    uint64_t seed = 1;

    double vartheta_mean = 0.783, vartheta_sd = 0.012;
    double varphi_mean = 0.138, varphi_sd = 0.015;
    double zeta_mean = 0.0, zeta_sd = 0.01;
    double chi_mean = 0.0, chi_sd = 0.01;
    double gamma_mean = 0.0, gamma_sd = 0.01;

    double t1_us = 15.0, t1_rel_sd = 0.2;
    double t2_us = 10.0, t2_rel_sd = 0.2;
    double readout_p10 = 0.03;  // P(read 0 | prepared 1)
    double readout_p01 = 0.01;  // P(read 1 | prepared 0)

    DriftSpec drift_zeta, drift_gamma;

    double gate_time_2q_ns = 32.0;
    double gate_time_uw_ns = 25.0;
    int trajectories = 25;

    // True parameters of the pair (a, b), without drift.
    gates::NcGateParams pair_truth(int phys_a, int phys_b) const;
    // Truth plus drift offsets at wall-clock `time_s`.
    gates::NcGateParams sample_pair_params(int phys_a, int phys_b, double time_s) const;

    double t1_of(int phys_q) const;
    double t2_of(int phys_q) const;

    bool noiseless_channels() const;

    std::string to_text() const;
    static DeviceProfile from_text(const std::string& text);
    static DeviceProfile ideal();  // no spread, no drift, no decoherence, no flips
};

// Executes a compiled circuit on the synthetic device: native gates take
// their sampled pair parameters, damping/dephasing channels follow every
// timed gate, and readout flips corrupt the sampled bits. Shots are spread
// over `profile.trajectories` Monte-Carlo trajectories.
ShotTable noisy_replay(const Circuit& compiled, const QubitAssignment& assignment, const DeviceProfile& profile,
                       int shots, uint64_t seed, double start_time_s = 0.0, int jobs = 1);

}  // namespace fhsim

#endif  // FHSIM_NOISE_HPP
