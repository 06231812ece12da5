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

#include "fhsim/noise.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

namespace fhsim {

namespace {

enum Salt : uint64_t {
    kVartheta = 0x11,
    kVarphi = 0x22,
    kZeta = 0x33,
    kChi = 0x44,
    kGamma = 0x55,
    kT1 = 0x66,
    kT2 = 0x77,
    kDriftPhase = 0x88,
    kWalk = 0x99,
};

uint64_t pair_key(int a, int b) {
    const uint64_t lo = static_cast<uint64_t>(std::min(a, b));
    const uint64_t hi = static_cast<uint64_t>(std::max(a, b));
    return (hi << 32) | lo;
}

double drift_offset(const DriftSpec& d, uint64_t seed, uint64_t key, double time_s) {
    switch (d.kind) {
        case DriftSpec::Kind::none:
            return 0.0;
        case DriftSpec::Kind::sinusoidal: {
            const double phase = 2.0 * M_PI * keyed_normal(seed, mix_seed(key, kDriftPhase));
            return d.amplitude * std::sin(2.0 * M_PI * time_s / d.period_s + phase);
        }
        case DriftSpec::Kind::random_walk: {
            const long ticks = std::min<long>(static_cast<long>(time_s / d.period_s), 100000L);
            double w = 0.0;
            for (long k = 1; k <= ticks; ++k)
                w += keyed_normal(seed, mix_seed(key, kWalk, static_cast<uint64_t>(k)));
            return d.amplitude * w;
        }
    }
    return 0.0;
}

std::string drift_to_text(const DriftSpec& d) {
    std::ostringstream os;
    os.precision(17);
    switch (d.kind) {
        case DriftSpec::Kind::none: return "none";
        case DriftSpec::Kind::sinusoidal: os << "sinusoidal " << d.amplitude << " " << d.period_s; break;
        case DriftSpec::Kind::random_walk: os << "random_walk " << d.amplitude << " " << d.period_s; break;
    }
    return os.str();
}

DriftSpec drift_from_text(const std::string& s) {
    std::istringstream is(s);
    std::string kind;
    is >> kind;
    DriftSpec d;
    if (kind == "none" || kind.empty()) return d;
    if (kind == "sinusoidal")
        d.kind = DriftSpec::Kind::sinusoidal;
    else if (kind == "random_walk")
        d.kind = DriftSpec::Kind::random_walk;
    else
        throw std::invalid_argument("unknown drift kind: " + kind);
    is >> d.amplitude >> d.period_s;
    return d;
}

}  // namespace

gates::NcGateParams DeviceProfile::pair_truth(int a, int b) const {
    const uint64_t key = pair_key(a, b);
    gates::NcGateParams p;
    p.theta = vartheta_mean + vartheta_sd * keyed_normal(seed, mix_seed(key, kVartheta));
    p.phi = varphi_mean + varphi_sd * keyed_normal(seed, mix_seed(key, kVarphi));
    p.zeta = zeta_mean + zeta_sd * keyed_normal(seed, mix_seed(key, kZeta));
    p.chi = chi_mean + chi_sd * keyed_normal(seed, mix_seed(key, kChi));
    p.gamma = gamma_mean + gamma_sd * keyed_normal(seed, mix_seed(key, kGamma));
    p.theta = std::clamp(p.theta, 0.0, M_PI / 2);
    return p;
}

gates::NcGateParams DeviceProfile::sample_pair_params(int a, int b, double time_s) const {
    gates::NcGateParams p = pair_truth(a, b);
    const uint64_t key = pair_key(a, b);
    p.zeta += drift_offset(drift_zeta, seed, mix_seed(key, kZeta), time_s);
    p.gamma += drift_offset(drift_gamma, seed, mix_seed(key, kGamma), time_s);
    return p;
}

double DeviceProfile::t1_of(int q) const {
    if (t1_us <= 0.0) return 0.0;
    return std::max(0.05 * t1_us, t1_us * (1.0 + t1_rel_sd * keyed_normal(seed, mix_seed(q, kT1))));
}

double DeviceProfile::t2_of(int q) const {
    if (t2_us <= 0.0) return 0.0;
    return std::max(0.05 * t2_us, t2_us * (1.0 + t2_rel_sd * keyed_normal(seed, mix_seed(q, kT2))));
}

bool DeviceProfile::noiseless_channels() const { return t1_us <= 0.0 && t2_us <= 0.0; }

DeviceProfile DeviceProfile::ideal() {
    DeviceProfile p;
    p.vartheta_mean = M_PI / 4;
    p.vartheta_sd = 0.0;
    p.varphi_mean = 0.0;
    p.varphi_sd = 0.0;
    p.zeta_sd = p.chi_sd = p.gamma_sd = 0.0;
    p.t1_us = 0.0;
    p.t2_us = 0.0;
    p.readout_p10 = 0.0;
    p.readout_p01 = 0.0;
    p.trajectories = 1;
    return p;
}

std::string DeviceProfile::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "# fhsim device profile v1\n";
    os << "seed = " << seed << "\n";
    os << "vartheta_mean = " << vartheta_mean << "\nvartheta_sd = " << vartheta_sd << "\n";
    os << "varphi_mean = " << varphi_mean << "\nvarphi_sd = " << varphi_sd << "\n";
    os << "zeta_mean = " << zeta_mean << "\nzeta_sd = " << zeta_sd << "\n";
    os << "chi_mean = " << chi_mean << "\nchi_sd = " << chi_sd << "\n";
    os << "gamma_mean = " << gamma_mean << "\ngamma_sd = " << gamma_sd << "\n";
    os << "t1_us = " << t1_us << "\nt1_rel_sd = " << t1_rel_sd << "\n";
    os << "t2_us = " << t2_us << "\nt2_rel_sd = " << t2_rel_sd << "\n";
    os << "readout_p10 = " << readout_p10 << "\nreadout_p01 = " << readout_p01 << "\n";
    os << "drift_zeta = " << drift_to_text(drift_zeta) << "\n";
    os << "drift_gamma = " << drift_to_text(drift_gamma) << "\n";
    os << "gate_time_2q_ns = " << gate_time_2q_ns << "\ngate_time_uw_ns = " << gate_time_uw_ns << "\n";
    os << "trajectories = " << trajectories << "\n";
    return os.str();
}

DeviceProfile DeviceProfile::from_text(const std::string& text) {
    DeviceProfile p;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "seed") p.seed = std::stoull(val);
        else if (key == "vartheta_mean") p.vartheta_mean = std::stod(val);
        else if (key == "vartheta_sd") p.vartheta_sd = std::stod(val);
        else if (key == "varphi_mean") p.varphi_mean = std::stod(val);
        else if (key == "varphi_sd") p.varphi_sd = std::stod(val);
        else if (key == "zeta_mean") p.zeta_mean = std::stod(val);
        else if (key == "zeta_sd") p.zeta_sd = std::stod(val);
        else if (key == "chi_mean") p.chi_mean = std::stod(val);
        else if (key == "chi_sd") p.chi_sd = std::stod(val);
        else if (key == "gamma_mean") p.gamma_mean = std::stod(val);
        else if (key == "gamma_sd") p.gamma_sd = std::stod(val);
        else if (key == "t1_us") p.t1_us = std::stod(val);
        else if (key == "t1_rel_sd") p.t1_rel_sd = std::stod(val);
        else if (key == "t2_us") p.t2_us = std::stod(val);
        else if (key == "t2_rel_sd") p.t2_rel_sd = std::stod(val);
        else if (key == "readout_p10") p.readout_p10 = std::stod(val);
        else if (key == "readout_p01") p.readout_p01 = std::stod(val);
        else if (key == "drift_zeta") p.drift_zeta = drift_from_text(val);
        else if (key == "drift_gamma") p.drift_gamma = drift_from_text(val);
        else if (key == "gate_time_2q_ns") p.gate_time_2q_ns = std::stod(val);
        else if (key == "gate_time_uw_ns") p.gate_time_uw_ns = std::stod(val);
        else if (key == "trajectories") p.trajectories = std::stoi(val);
        else throw std::invalid_argument("unknown profile key: " + key);
    }
    if (p.readout_p10 < 0 || p.readout_p10 > 0.2 || p.readout_p01 < 0 || p.readout_p01 > 0.2)
        throw std::invalid_argument("readout flip probabilities must be in [0, 0.2]");
    return p;
}

namespace {

struct LogicalSite {
    int spin, site;
};

LogicalSite to_site(int logical_q, int L) {
    return logical_q < L ? LogicalSite{kSpinUp, logical_q} : LogicalSite{kSpinDown, logical_q - L};
}

ShotTable run_trajectory(const Circuit& c, const QubitAssignment& assignment, const DeviceProfile& profile,
                         int shots, uint64_t traj_seed, double start_time_s) {
    const int L = c.n_qubits / 2;
    Rng rng(traj_seed);
    StateVector state(c.n_qubits);
    double time_ns = start_time_s * 1e9;

    auto physical = [&](int logical_q) {
        const LogicalSite s = to_site(logical_q, L);
        return assignment.physical(s.spin, s.site);
    };
    auto apply_channels = [&](int logical_q, double dt_ns) {
        const int pq = physical(logical_q);
        const double t1 = profile.t1_of(pq);
        const double t2 = profile.t2_of(pq);
        if (t1 > 0.0) {
            const double ps = 1.0 - std::exp(-dt_ns / (t1 * 1e3));
            state.apply_channel({ChannelEvent::Kind::amplitude_damping, logical_q, ps}, rng);
        }
        if (t2 > 0.0) {
            const double ps = 1.0 - std::exp(-dt_ns / (t2 * 1e3));
            state.apply_channel({ChannelEvent::Kind::dephasing, logical_q, ps}, rng);
        }
    };

    for (const Moment& m : c.moments) {
        double moment_dt = 0.0;
        for (const PlacedGate& g : m.gates) {
            switch (g.kind) {
                case GateKind::NATIVE: {
                    const auto params = profile.sample_pair_params(physical(g.q0), physical(g.q1), time_ns * 1e-9);
                    state.apply_2q(gates::nc_gate(params), g.q0, g.q1);
                    apply_channels(g.q0, profile.gate_time_2q_ns);
                    apply_channels(g.q1, profile.gate_time_2q_ns);
                    moment_dt = std::max(moment_dt, profile.gate_time_2q_ns);
                    break;
                }
                case GateKind::X:
                case GateKind::RX:
                    state.apply_1q(gates::gate_matrix_1q(g), g.q0);
                    apply_channels(g.q0, profile.gate_time_uw_ns);
                    moment_dt = std::max(moment_dt, profile.gate_time_uw_ns);
                    break;
                case GateKind::RZ:
                    state.apply_1q(gates::gate_matrix_1q(g), g.q0);
                    break;
                default:
                    // Logical two-qubit gates in a noisy replay indicate an
                    // uncompiled circuit; the device only runs natives.
                    throw std::invalid_argument("noisy_replay requires a compiled circuit");
            }
        }
        time_ns += moment_dt;
    }

    ShotTable t = state.sample_shots(shots, rng.next_u64());
    if (profile.readout_p10 > 0.0 || profile.readout_p01 > 0.0) {
        for (uint64_t& bits : t.bitstrings) {
            for (int q = 0; q < c.n_qubits; ++q) {
                const uint64_t bit = uint64_t{1} << q;
                const double pf = (bits & bit) ? profile.readout_p10 : profile.readout_p01;
                if (pf > 0.0 && rng.bernoulli(pf)) bits ^= bit;
            }
        }
    }
    return t;
}

}  // namespace

ShotTable noisy_replay(const Circuit& compiled, const QubitAssignment& assignment, const DeviceProfile& profile,
                       int shots, uint64_t seed, double start_time_s, int jobs) {
    if (shots < 1) throw std::invalid_argument("noisy_replay: shots must be >= 1");
    const int ntraj = std::max(1, std::min(profile.trajectories, shots));
    std::vector<int> share(ntraj, shots / ntraj);
    for (int k = 0; k < shots % ntraj; ++k) share[k]++;

    std::vector<ShotTable> parts(ntraj);
    auto work = [&](int t) {
        parts[t] = run_trajectory(compiled, assignment, profile, share[t], mix_seed(seed, t), start_time_s);
    };
    if (jobs <= 1 || ntraj == 1) {
        for (int t = 0; t < ntraj; ++t) work(t);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<int> next{0};
        const int workers = std::min(jobs, ntraj);
        for (int w = 0; w < workers; ++w)
            futs.push_back(std::async(std::launch::async, [&] {
                for (int t = next.fetch_add(1); t < ntraj; t = next.fetch_add(1)) work(t);
            }));
        for (auto& f : futs) f.get();
    }

    ShotTable out;
    out.n_qubits = compiled.n_qubits;
    out.seed = seed;
    for (const ShotTable& p : parts)
        out.bitstrings.insert(out.bitstrings.end(), p.bitstrings.begin(), p.bitstrings.end());
    return out;
}

}  // namespace fhsim
