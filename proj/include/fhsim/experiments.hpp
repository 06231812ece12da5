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

#ifndef FHSIM_EXPERIMENTS_HPP
#define FHSIM_EXPERIMENTS_HPP

#include <map>
#include <string>

#include "fhsim/floquet.hpp"
#include "fhsim/mitigation.hpp"
#include "fhsim/noise.hpp"
#include "fhsim/oracles.hpp"

namespace fhsim {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Key/value text with [section] headers; '#' comments.
struct KeyValueConfig {
    std::map<std::string, std::string> values;  // "section.key" -> value

    static KeyValueConfig parse(const std::string& text);
    static KeyValueConfig load(const std::string& path);

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
};

struct ExperimentConfig {
    std::string kind;  // separation | wavepacket | calibration | mitigation-ablation

    // model
    int L = 8;
    double J = 1.0;
    double tau = 0.3;
    std::vector<double> u_list = {0, 1, 2, 3};
    int n_up = 2, n_dn = 2;
    GaussianTrap trap_up{4.0, 4.5, 1.0};
    GaussianTrap trap_dn{0.0, 4.5, 1.0};

    // wavepacket
    double wp_center_up = 6.0, wp_center_dn = 3.0;
    double wp_width = 1.0;
    double wp_momentum = M_PI / 2;  // up mover gets -k, down mover +k

    // run
    std::vector<int> etas = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int shots = 2000;
    uint64_t seed = 7;
    std::vector<int> assignments = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
    bool noisy = false;
    bool spin_echo_when_noisy = true;
    DeviceProfile profile;

    // native gate used for compilation
    gates::NativeGateParams native{0.783, 0.138};

    // calibration
    double cal_r = 1.9;
    int cal_K = 7;
    int cal_shots = 1000;
    int cal_trials = 1;
    gates::NcGateParams cal_truth{0.783, 0.02, 0.05, 0.2, 0.138};
    double cal_spam = 0.0;  // symmetric readout flip probability
    DriftSpec cal_drift;    // applied to zeta

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_text(const std::string& text);
};

// The Hamiltonian the compiled circuit actually implements when the native
// gate carries a parasitic phase: v_bond and local-potential corrections per
// K-type composite. interacting_shape doubles the even-bond count (iSWAP
// repositioning plus the combined even hop).
HubbardParams parasitic_reference_params(const HubbardParams& base, double varphi, bool interacting_shape);

// Full experiment circuit: initialization plus eta Trotter steps (logical).
Circuit build_experiment_circuit(const HubbardParams& h_evolve, const HubbardParams& h0, int n_up, int n_dn,
                                 int eta, const TrotterOptions& opts);
Circuit build_wavepacket_experiment_circuit(const ExperimentConfig& cfg, const HubbardParams& h_evolve, int eta);

struct SeparationCase {
    double u = 0.0;
    bool hopping_only = false;
    bool clamped = false;
    DensitySeries exact_oracle;   // model + parasitic corrections
    DensitySeries ideal_circuit;  // noiseless replay of the compiled circuit
    std::vector<DensitySeries> raw, post;           // per assignment (noisy runs)
    std::vector<std::vector<double>> success;       // [assignment][eta index]
    DensitySeries averaged, rescaled;
    RescaleFit fit;
    bool has_noisy = false;
};

struct SeparationRun {
    ExperimentConfig cfg;
    std::vector<SeparationCase> cases;
};

// u = 0 runs hopping-only unless fixed_shape, which keeps the interacting
// stage structure and clamps the infeasible CPHASE(0) to the feasibility
// boundary (the parasitic minimum).
SeparationRun run_separation(const ExperimentConfig& cfg, int jobs = 1, bool fixed_shape_u0 = false);

struct WavepacketRun {
    ExperimentConfig cfg;
    DensitySeries exact_oracle;  // free propagator with parasitic corrections
    DensitySeries ideal_circuit;
    std::vector<DensitySeries> raw, post;
    std::vector<std::vector<double>> success;
    DensitySeries averaged, rescaled;
    RescaleFit fit;
    bool has_noisy = false;
    std::vector<double> position_up_ideal, position_dn_ideal;  // per eta
};

WavepacketRun run_wavepacket(const ExperimentConfig& cfg, int jobs = 1);

struct CalibrationTrial {
    floquet::CalEstimate estimate;
    gates::NcGateParams truth;
};

struct CalibrationRun {
    ExperimentConfig cfg;
    std::vector<CalibrationTrial> trials;
};

CalibrationRun run_calibration(const ExperimentConfig& cfg);

struct StatsRow {
    std::string name;
    double t_evol = 0.0;
    double t_circuit_us = 0.0;
    long depth = 0;
    long two_qubit = 0;   // total over both chains
    long microwave = 0;
    long rz = 0;
    int chains = 2;  // hopping-only rows are usually quoted per chain
};

std::vector<StatsRow> circuit_stats(const ExperimentConfig& cfg);
std::vector<StatsRow> table_reference_stats();  // the four published rows

// Output writers (deterministic: reruns are byte-identical).
void write_separation_outputs(const SeparationRun& run, const std::string& out_dir);
void write_wavepacket_outputs(const WavepacketRun& run, const std::string& out_dir);
void write_calibration_json(const CalibrationRun& run, const std::string& path);
void write_stats_text(const std::vector<StatsRow>& rows, std::ostream& os);

}  // namespace fhsim

#endif  // FHSIM_EXPERIMENTS_HPP
