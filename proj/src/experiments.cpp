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

#include "fhsim/experiments.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace fhsim {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    while (std::getline(in, line)) {
        if (const auto pos = line.find('#'); pos != std::string::npos) line = line.substr(0, pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("bad section header: " + line);
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        cfg.values[section.empty() ? key : section + "." + key] = val;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": " + it->second);
    }
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        return std::stol(it->second);
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": " + it->second);
    }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
    if (it->second == "false" || it->second == "0" || it->second == "no") return false;
    throw ConfigError("bad boolean value for " + key + ": " + it->second);
}

std::vector<double> KeyValueConfig::get_list(const std::string& key, const std::vector<double>& fallback) const {
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    std::vector<double> out;
    std::string item;
    std::istringstream is(it->second);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad list entry for " + key + ": " + item);
        }
    }
    if (out.empty()) throw ConfigError("empty list for " + key);
    return out;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    const KeyValueConfig kv = KeyValueConfig::parse(text);
    ExperimentConfig c;
    c.kind = kv.get("kind", "");
    if (c.kind != "separation" && c.kind != "wavepacket" && c.kind != "calibration" &&
        c.kind != "mitigation-ablation")
        throw ConfigError("config: kind must be separation|wavepacket|calibration|mitigation-ablation");

    c.L = static_cast<int>(kv.get_long("model.L", c.L));
    c.J = kv.get_double("model.J", c.J);
    c.tau = kv.get_double("model.tau", c.tau);
    c.u_list = kv.get_list("model.u", c.u_list);
    c.n_up = static_cast<int>(kv.get_long("model.n_up", c.n_up));
    c.n_dn = static_cast<int>(kv.get_long("model.n_dn", c.n_dn));
    c.trap_up = {kv.get_double("trap_up.lambda", c.trap_up.lambda), kv.get_double("trap_up.center", c.trap_up.center),
                 kv.get_double("trap_up.sigma", c.trap_up.sigma)};
    c.trap_dn = {kv.get_double("trap_dn.lambda", c.trap_dn.lambda), kv.get_double("trap_dn.center", c.trap_dn.center),
                 kv.get_double("trap_dn.sigma", c.trap_dn.sigma)};

    c.wp_center_up = kv.get_double("wavepacket.center_up", c.wp_center_up);
    c.wp_center_dn = kv.get_double("wavepacket.center_dn", c.wp_center_dn);
    c.wp_width = kv.get_double("wavepacket.width", c.wp_width);
    c.wp_momentum = kv.get_double("wavepacket.momentum", c.wp_momentum);

    {
        std::vector<double> etas_d(c.etas.begin(), c.etas.end());
        etas_d = kv.get_list("run.etas", etas_d);
        c.etas.clear();
        for (const double e : etas_d) c.etas.push_back(static_cast<int>(e));
    }
    c.shots = static_cast<int>(kv.get_long("run.shots", c.shots));
    c.seed = static_cast<uint64_t>(kv.get_long("run.seed", static_cast<long>(c.seed)));
    {
        std::vector<double> as_d(c.assignments.begin(), c.assignments.end());
        as_d = kv.get_list("run.assignments", as_d);
        c.assignments.clear();
        for (const double a : as_d) c.assignments.push_back(static_cast<int>(a));
    }
    c.noisy = kv.get_bool("run.noisy", c.noisy);
    c.spin_echo_when_noisy = kv.get_bool("run.spin_echo", c.spin_echo_when_noisy);
    if (kv.has("run.profile_file")) {
        std::ifstream in(kv.get("run.profile_file", ""));
        if (!in) throw ConfigError("cannot open profile file: " + kv.get("run.profile_file", ""));
        std::stringstream ss;
        ss << in.rdbuf();
        c.profile = DeviceProfile::from_text(ss.str());
    } else {
        // inline [profile] section, forwarded to the profile parser
        std::ostringstream ptext;
        for (const auto& [key, val] : kv.values)
            if (key.rfind("profile.", 0) == 0) ptext << key.substr(8) << " = " << val << "\n";
        if (!ptext.str().empty()) c.profile = DeviceProfile::from_text(ptext.str());
    }

    c.native.vartheta = kv.get_double("native.vartheta", c.native.vartheta);
    c.native.varphi = kv.get_double("native.varphi", c.native.varphi);
    if (kv.get_bool("native.ideal", false)) c.native = gates::ideal_native();

    c.cal_r = kv.get_double("calibration.r", c.cal_r);
    c.cal_K = static_cast<int>(kv.get_long("calibration.K", c.cal_K));
    c.cal_shots = static_cast<int>(kv.get_long("calibration.shots", c.cal_shots));
    c.cal_trials = static_cast<int>(kv.get_long("calibration.trials", c.cal_trials));
    c.cal_truth.theta = kv.get_double("calibration.theta", c.cal_truth.theta);
    c.cal_truth.zeta = kv.get_double("calibration.zeta", c.cal_truth.zeta);
    c.cal_truth.chi = kv.get_double("calibration.chi", c.cal_truth.chi);
    c.cal_truth.gamma = kv.get_double("calibration.gamma", c.cal_truth.gamma);
    c.cal_truth.phi = kv.get_double("calibration.phi", c.cal_truth.phi);
    c.cal_spam = kv.get_double("calibration.spam", c.cal_spam);
    const std::string dk = kv.get("calibration.drift", "none");
    if (dk == "sinusoidal") {
        c.cal_drift.kind = DriftSpec::Kind::sinusoidal;
        c.cal_drift.amplitude = kv.get_double("calibration.drift_amplitude", 0.01);
        c.cal_drift.period_s = kv.get_double("calibration.drift_period", 60.0);
    } else if (dk != "none") {
        throw ConfigError("calibration.drift must be none|sinusoidal");
    }
    return c;
}

HubbardParams parasitic_reference_params(const HubbardParams& base, double varphi, bool interacting_shape) {
    HubbardParams p = base;
    if (varphi == 0.0) return p;
    const double unit = varphi / p.tau;  // one K-type composite: v += 2*unit, eps -= unit per end
    p.v_bond.assign(p.L - 1, 0.0);
    std::array<std::vector<double>, 2> extra;
    for (int s = 0; s < 2; ++s) extra[s].assign(p.L, 0.0);
    for (int j = 0; j + 1 < p.L; ++j) {
        const bool even_bond = (j % 2 == 1);  // 0-indexed bonds (1,2),(3,4),...
        const int composites = interacting_shape ? (even_bond ? 2 : 1) : 1;
        p.v_bond[j] += 2.0 * unit * composites;
        for (int s = 0; s < 2; ++s) {
            extra[s][j] -= unit * composites;
            extra[s][j + 1] -= unit * composites;
        }
    }
    for (int s = 0; s < 2; ++s) {
        if (p.eps[s].empty()) p.eps[s].assign(p.L, 0.0);
        for (int j = 0; j < p.L; ++j) p.eps[s][j] += extra[s][j];
    }
    return p;
}

Circuit build_experiment_circuit(const HubbardParams& h_evolve, const HubbardParams& h0, int n_up, int n_dn,
                                 int eta, const TrotterOptions& opts) {
    Circuit c = build_initial_state_circuit(h0, n_up, n_dn);
    const Circuit step = build_trotter_step(h_evolve, opts);
    for (int k = 0; k < eta; ++k) c.append(step);
    return c;
}

Circuit build_wavepacket_experiment_circuit(const ExperimentConfig& cfg, const HubbardParams& h_evolve, int eta) {
    Circuit c = build_wavepacket_circuit(cfg.L, kSpinUp, cfg.wp_center_up, cfg.wp_width, -cfg.wp_momentum);
    const Circuit dn = build_wavepacket_circuit(cfg.L, kSpinDown, cfg.wp_center_dn, cfg.wp_width, cfg.wp_momentum);
    c.append(dn);
    TrotterOptions opts;
    opts.hopping_only = true;
    const Circuit step = build_trotter_step(h_evolve, opts);
    for (int k = 0; k < eta; ++k) c.append(step);
    return c;
}

namespace {

DensitySeries make_series(const std::vector<int>& etas, double tau) {
    DensitySeries s;
    s.etas = etas;
    for (const int e : etas) s.times.push_back(e * tau);
    return s;
}

struct NoisyCellResult {
    DensitySeries raw, post;
    std::vector<double> success;
};

NoisyCellResult run_noisy_cell(const std::vector<Circuit>& compiled, const ExperimentConfig& cfg, int assignment_id,
                               uint64_t cell_seed) {
    NoisyCellResult r;
    r.raw = make_series(cfg.etas, cfg.tau);
    r.post = make_series(cfg.etas, cfg.tau);
    const QubitAssignment assign = QubitAssignment::variant(assignment_id, cfg.L);
    for (std::size_t ei = 0; ei < compiled.size(); ++ei) {
        const ShotTable shots =
            noisy_replay(compiled[ei], assign, cfg.profile, cfg.shots, mix_seed(cell_seed, ei), 0.0, 1);
        r.raw.rho.push_back(densities_from_shots(shots, cfg.L));
        const PostselectResult ps = postselect(shots, cfg.L, cfg.n_up, cfg.n_dn);
        r.post.rho.push_back(densities_from_shots(ps.kept, cfg.L));
        r.success.push_back(ps.success_rate);
    }
    r.raw.compute_kappas(cfg.L);
    r.post.compute_kappas(cfg.L);
    return r;
}

template <class Task>
void parallel_for(int n, int jobs, Task&& task) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::future<void>> futs;
    for (int w = 0; w < std::min(jobs, n); ++w)
        futs.push_back(std::async(std::launch::async, [&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) task(i);
        }));
    for (auto& f : futs) f.get();
}

}  // namespace

SeparationRun run_separation(const ExperimentConfig& cfg, int jobs, bool fixed_shape_u0) {
    SeparationRun run;
    run.cfg = cfg;

    HubbardParams h0;
    h0.L = cfg.L;
    h0.J = cfg.J;
    h0.tau = cfg.tau;
    h0.U = 0.0;
    if (cfg.trap_up.lambda != 0.0) h0.set_trap(kSpinUp, cfg.trap_up);
    if (cfg.trap_dn.lambda != 0.0) h0.set_trap(kSpinDown, cfg.trap_dn);

    const oracles::SectorState psi0 = oracles::sector_ground_state(h0, cfg.n_up, cfg.n_dn);

    for (const double u : cfg.u_list) {
        SeparationCase sc;
        sc.u = u;
        sc.hopping_only = (u == 0.0) && !fixed_shape_u0;
        const double phi_int = cfg.tau * u * cfg.J;
        sc.clamped = !sc.hopping_only && std::abs(phi_int) < 2.0 * std::abs(cfg.native.varphi);

        HubbardParams hev;
        hev.L = cfg.L;
        hev.J = cfg.J;
        hev.tau = cfg.tau;
        hev.U = u * cfg.J;

        // Oracle: the model the compiled circuit targets, including the
        // parasitic corrections and the clamped interaction floor.
        HubbardParams href = parasitic_reference_params(hev, cfg.native.varphi, !sc.hopping_only);
        if (sc.clamped) href.U = 2.0 * cfg.native.varphi / cfg.tau * (phi_int < 0 ? -1.0 : 1.0);

        sc.exact_oracle = make_series(cfg.etas, cfg.tau);
        for (const int eta : cfg.etas) {
            const auto evolved = oracles::exact_evolve(href, psi0, eta * cfg.tau);
            sc.exact_oracle.rho.push_back(oracles::densities(evolved));
        }
        sc.exact_oracle.compute_kappas(cfg.L);

        // Compiled circuits per eta (shared across assignments).
        TrotterOptions opts;
        opts.hopping_only = sc.hopping_only;
        opts.spin_echo = cfg.noisy && cfg.spin_echo_when_noisy && !sc.hopping_only;
        const Circuit init = build_initial_state_circuit(h0, cfg.n_up, cfg.n_dn);
        const Circuit step = build_trotter_step(hev, opts);
        const Circuit cinit = compile_circuit(init, cfg.native, sc.clamped);
        const Circuit cstep = compile_circuit(step, cfg.native, sc.clamped);
        std::vector<Circuit> compiled;
        for (const int eta : cfg.etas) {
            Circuit c = cinit;
            for (int k = 0; k < eta; ++k) c.append(cstep);
            compiled.push_back(std::move(c));
        }

        sc.ideal_circuit = make_series(cfg.etas, cfg.tau);
        for (const Circuit& c : compiled) {
            StateVector state(2 * cfg.L);
            apply_circuit(c, state);
            sc.ideal_circuit.rho.push_back(densities_from_state(state, cfg.L));
        }
        sc.ideal_circuit.compute_kappas(cfg.L);

        if (cfg.noisy) {
            sc.has_noisy = true;
            const int na = static_cast<int>(cfg.assignments.size());
            sc.raw.resize(na);
            sc.post.resize(na);
            sc.success.resize(na);
            const uint64_t case_seed = mix_seed(cfg.seed, static_cast<uint64_t>(u * 1000 + 17));
            parallel_for(na, jobs, [&](int ai) {
                const auto cell =
                    run_noisy_cell(compiled, cfg, cfg.assignments[ai], mix_seed(case_seed, ai));
                sc.raw[ai] = cell.raw;
                sc.post[ai] = cell.post;
                sc.success[ai] = cell.success;
            });
            sc.averaged = assignment_average(sc.post);
            sc.fit = fit_rescale(sc.averaged, sc.ideal_circuit, cfg.n_up, cfg.n_dn, cfg.L);
            sc.rescaled = apply_rescale(sc.averaged, sc.fit, cfg.n_up, cfg.n_dn, cfg.L);
        }
        run.cases.push_back(std::move(sc));
    }
    return run;
}

WavepacketRun run_wavepacket(const ExperimentConfig& cfg, int jobs) {
    WavepacketRun run;
    run.cfg = cfg;

    HubbardParams hev;
    hev.L = cfg.L;
    hev.J = cfg.J;
    hev.tau = cfg.tau;
    hev.U = 0.0;

    // Free-fermion oracle with parasitic corrections on the single-particle
    // level: the v_bond term vanishes for one particle per chain, but the
    // local-potential correction survives.
    const HubbardParams href = parasitic_reference_params(hev, cfg.native.varphi, false);
    run.exact_oracle = make_series(cfg.etas, cfg.tau);
    {
        Eigen::MatrixXd hu = single_particle_hamiltonian(href, kSpinUp);
        Eigen::MatrixXd hd = single_particle_hamiltonian(href, kSpinDown);
        Eigen::MatrixXd orb_u(cfg.L, 1), orb_d(cfg.L, 1);
        for (int j = 0; j < cfg.L; ++j) {
            const double du = (j + 1) - cfg.wp_center_up;
            const double dd = (j + 1) - cfg.wp_center_dn;
            orb_u(j, 0) = std::exp(-du * du / (4.0 * cfg.wp_width * cfg.wp_width));
            orb_d(j, 0) = std::exp(-dd * dd / (4.0 * cfg.wp_width * cfg.wp_width));
        }
        orb_u.col(0).normalize();
        orb_d.col(0).normalize();
        // momentum phases: fold into complex orbitals via the free propagator
        // of the complex matrix; reuse the sector oracle instead for t > 0.
        // Densities of a single free particle evolve as |e^{-iht} phi|^2 even
        // with a complex phi, so build the complex orbital directly.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esu(hu), esd(hd);
        for (const double t : run.exact_oracle.times) {
            DensityPair d;
            d.up.assign(cfg.L, 0.0);
            d.dn.assign(cfg.L, 0.0);
            auto evolve = [&](const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es, Eigen::VectorXcd phi) {
                Eigen::VectorXcd coef = es.eigenvectors().transpose().cast<std::complex<double>>() * phi;
                for (long k = 0; k < coef.size(); ++k)
                    coef(k) *= std::exp(std::complex<double>(0, -es.eigenvalues()(k) * t));
                return (es.eigenvectors().cast<std::complex<double>>() * coef).eval();
            };
            Eigen::VectorXcd pu(cfg.L), pd(cfg.L);
            for (int j = 0; j < cfg.L; ++j) {
                pu(j) = orb_u(j, 0) * std::exp(std::complex<double>(0, -cfg.wp_momentum * (j + 1)));
                pd(j) = orb_d(j, 0) * std::exp(std::complex<double>(0, cfg.wp_momentum * (j + 1)));
            }
            const Eigen::VectorXcd eu = evolve(esu, pu);
            const Eigen::VectorXcd ed = evolve(esd, pd);
            for (int j = 0; j < cfg.L; ++j) {
                d.up[j] = std::norm(eu(j));
                d.dn[j] = std::norm(ed(j));
            }
            run.exact_oracle.rho.push_back(std::move(d));
        }
        run.exact_oracle.compute_kappas(cfg.L);
    }

    const Circuit init = build_wavepacket_experiment_circuit(cfg, hev, 0);
    TrotterOptions opts;
    opts.hopping_only = true;
    const Circuit step = build_trotter_step(hev, opts);
    const Circuit cinit = compile_circuit(init, cfg.native);
    const Circuit cstep = compile_circuit(step, cfg.native);
    std::vector<Circuit> compiled;
    for (const int eta : cfg.etas) {
        Circuit c = cinit;
        for (int k = 0; k < eta; ++k) c.append(cstep);
        compiled.push_back(std::move(c));
    }

    run.ideal_circuit = make_series(cfg.etas, cfg.tau);
    for (const Circuit& c : compiled) {
        StateVector state(2 * cfg.L);
        apply_circuit(c, state);
        const DensityPair d = densities_from_state(state, cfg.L);
        double pu = 0, pd = 0;
        for (int j = 0; j < cfg.L; ++j) {
            pu += (j + 1) * d.up[j];
            pd += (j + 1) * d.dn[j];
        }
        run.position_up_ideal.push_back(pu);
        run.position_dn_ideal.push_back(pd);
        run.ideal_circuit.rho.push_back(d);
    }
    run.ideal_circuit.compute_kappas(cfg.L);

    if (cfg.noisy) {
        run.has_noisy = true;
        const int na = static_cast<int>(cfg.assignments.size());
        run.raw.resize(na);
        run.post.resize(na);
        run.success.resize(na);
        ExperimentConfig c1 = cfg;
        c1.n_up = 1;
        c1.n_dn = 1;
        parallel_for(na, jobs, [&](int ai) {
            const auto cell = run_noisy_cell(compiled, c1, cfg.assignments[ai], mix_seed(cfg.seed, 71, ai));
            run.raw[ai] = cell.raw;
            run.post[ai] = cell.post;
            run.success[ai] = cell.success;
        });
        run.averaged = assignment_average(run.post);
        run.fit = fit_rescale(run.averaged, run.ideal_circuit, 1, 1, cfg.L);
        run.rescaled = apply_rescale(run.averaged, run.fit, 1, 1, cfg.L);
    }
    return run;
}

CalibrationRun run_calibration(const ExperimentConfig& cfg) {
    CalibrationRun run;
    run.cfg = cfg;
    const floquet::Schedule sched = floquet::make_schedule(cfg.cal_r, cfg.cal_K);
    floquet::CalOptions opts;
    opts.shots_per_setting = cfg.cal_shots;
    for (int t = 0; t < cfg.cal_trials; ++t) {
        const gates::NcGateParams truth = cfg.cal_truth;
        const DriftSpec drift = cfg.cal_drift;
        auto truth_at = [truth, drift](double time_s) {
            gates::NcGateParams p = truth;
            if (drift.kind == DriftSpec::Kind::sinusoidal)
                p.zeta += drift.amplitude * std::sin(2.0 * M_PI * time_s / drift.period_s);
            return p;
        };
        floquet::SyntheticSampler sampler(truth_at, cfg.cal_spam, cfg.cal_spam, mix_seed(cfg.seed, t));
        CalibrationTrial trial;
        trial.truth = truth;
        trial.estimate = floquet::calibrate(sampler, sched, opts);
        run.trials.push_back(std::move(trial));
    }
    return run;
}

std::vector<StatsRow> circuit_stats(const ExperimentConfig& cfg) {
    std::vector<StatsRow> rows;
    if (cfg.kind == "wavepacket") {
        HubbardParams hev;
        hev.L = cfg.L;
        hev.J = cfg.J;
        hev.tau = cfg.tau;
        for (const int eta : cfg.etas) {
            const Circuit c =
                compile_circuit(build_wavepacket_experiment_circuit(cfg, hev, eta), cfg.native);
            const GateCounts gc = count_gates(c);
            StatsRow r;
            r.name = "noninteracting eta=" + std::to_string(eta);
            r.t_evol = eta * cfg.tau;
            r.t_circuit_us = gc.circuit_time_ns / 1000.0;
            r.depth = gc.depth_slots;
            r.two_qubit = gc.two_qubit_native;
            r.microwave = gc.microwave;
            r.rz = gc.rz;
            rows.push_back(r);
        }
        return rows;
    }
    HubbardParams h0;
    h0.L = cfg.L;
    h0.J = cfg.J;
    h0.tau = cfg.tau;
    if (cfg.trap_up.lambda != 0.0) h0.set_trap(kSpinUp, cfg.trap_up);
    if (cfg.trap_dn.lambda != 0.0) h0.set_trap(kSpinDown, cfg.trap_dn);
    for (const double u : cfg.u_list) {
        HubbardParams hev;
        hev.L = cfg.L;
        hev.J = cfg.J;
        hev.tau = cfg.tau;
        hev.U = u * cfg.J;
        TrotterOptions opts;
        opts.spin_echo = true;
        for (const int eta : cfg.etas) {
            const Circuit c = compile_circuit(
                build_experiment_circuit(hev, h0, cfg.n_up, cfg.n_dn, eta, opts), cfg.native, true);
            const GateCounts gc = count_gates(c);
            StatsRow r;
            r.name = "interacting u=" + std::to_string(u).substr(0, 3) + " eta=" + std::to_string(eta);
            r.t_evol = eta * cfg.tau;
            r.t_circuit_us = gc.circuit_time_ns / 1000.0;
            r.depth = gc.depth_slots;
            r.two_qubit = gc.two_qubit_native;
            r.microwave = gc.microwave;
            r.rz = gc.rz;
            rows.push_back(r);
        }
    }
    return rows;
}

std::vector<StatsRow> table_reference_stats() {
    ExperimentConfig cfg;
    cfg.kind = "separation";
    cfg.u_list = {3.0};
    std::vector<StatsRow> rows;
    for (const int eta : {5, 10}) {
        cfg.etas = {eta};
        auto r = circuit_stats(cfg);
        rows.push_back(r.front());
    }
    ExperimentConfig wp;
    wp.kind = "wavepacket";
    for (const int eta : {30, 55}) {
        wp.etas = {eta};
        auto r = circuit_stats(wp);
        rows.push_back(r.front());
    }
    return rows;
}

// --- writers ---------------------------------------------------------------

namespace {

void write_density_rows(std::ostream& os, const std::string& series, double u, const DensitySeries& s) {
    for (std::size_t e = 0; e < s.rho.size(); ++e)
        for (int spin = 0; spin < 2; ++spin)
            for (std::size_t j = 0; j < s.rho[e].up.size(); ++j) {
                const double v = spin == kSpinUp ? s.rho[e].up[j] : s.rho[e].dn[j];
                const double sem =
                    s.sem.empty() ? 0.0 : (spin == kSpinUp ? s.sem[e].up[j] : s.sem[e].dn[j]);
                os << series << "," << u << "," << s.etas[e] << "," << s.times[e] << ","
                   << (spin == kSpinUp ? "up" : "down") << "," << (j + 1) << "," << v << "," << sem << "\n";
            }
}

void write_kappa_rows(std::ostream& os, const std::string& series, double u, const DensitySeries& s) {
    const auto rp = spread_rate(s.kappa_plus, s.times);
    const auto rm = spread_rate(s.kappa_minus, s.times);
    for (std::size_t e = 0; e < s.kappa_plus.size(); ++e)
        os << series << "," << u << "," << s.etas[e] << "," << s.times[e] << "," << s.kappa_plus[e] << ","
           << s.kappa_minus[e] << "," << rp[e] << "," << rm[e] << "\n";
}

}  // namespace

void write_separation_outputs(const SeparationRun& run, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream dens(fs::path(out_dir) / "densities.csv");
    std::ofstream kap(fs::path(out_dir) / "kappa.csv");
    dens << "# fhsim separation densities csv v1\nseries,u,eta,t,spin,site,value,sem\n";
    kap << "# fhsim separation kappa csv v1\nseries,u,eta,t,kappa_plus,kappa_minus,rate_plus,rate_minus\n";
    dens << std::setprecision(12);
    kap << std::setprecision(12);
    nlohmann::json meta;
    meta["kind"] = run.cfg.kind;
    meta["seed"] = run.cfg.seed;
    for (const SeparationCase& sc : run.cases) {
        write_density_rows(dens, "exact", sc.u, sc.exact_oracle);
        write_density_rows(dens, "ideal", sc.u, sc.ideal_circuit);
        write_kappa_rows(kap, "exact", sc.u, sc.exact_oracle);
        write_kappa_rows(kap, "ideal", sc.u, sc.ideal_circuit);
        nlohmann::json cj;
        cj["u"] = sc.u;
        cj["hopping_only"] = sc.hopping_only;
        cj["clamped"] = sc.clamped;
        if (sc.has_noisy) {
            write_density_rows(dens, "averaged", sc.u, sc.averaged);
            write_density_rows(dens, "rescaled", sc.u, sc.rescaled);
            write_kappa_rows(kap, "averaged", sc.u, sc.averaged);
            write_kappa_rows(kap, "rescaled", sc.u, sc.rescaled);
            cj["rescale_a"] = sc.fit.a;
            cj["rescale_b"] = sc.fit.b;
            cj["rescale_sigma_a"] = sc.fit.sigma_a;
            cj["rescale_sigma_b"] = sc.fit.sigma_b;
            cj["success"] = sc.success;
        }
        meta["cases"].push_back(cj);
    }
    std::ofstream mj(fs::path(out_dir) / "meta.json");
    mj << meta.dump(2) << "\n";
}

void write_wavepacket_outputs(const WavepacketRun& run, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream dens(fs::path(out_dir) / "densities.csv");
    dens << "# fhsim wavepacket densities csv v1\nseries,u,eta,t,spin,site,value,sem\n";
    dens << std::setprecision(12);
    write_density_rows(dens, "exact", 0.0, run.exact_oracle);
    write_density_rows(dens, "ideal", 0.0, run.ideal_circuit);
    std::ofstream pos(fs::path(out_dir) / "positions.csv");
    pos << "# fhsim wavepacket positions csv v1\nseries,eta,t,position_up,position_down\n";
    pos << std::setprecision(12);
    for (std::size_t e = 0; e < run.ideal_circuit.rho.size(); ++e)
        pos << "ideal," << run.ideal_circuit.etas[e] << "," << run.ideal_circuit.times[e] << ","
            << run.position_up_ideal[e] << "," << run.position_dn_ideal[e] << "\n";
    nlohmann::json meta;
    meta["kind"] = run.cfg.kind;
    meta["seed"] = run.cfg.seed;
    if (run.has_noisy) {
        write_density_rows(dens, "averaged", 0.0, run.averaged);
        write_density_rows(dens, "rescaled", 0.0, run.rescaled);
        meta["rescale_a"] = run.fit.a;
        meta["rescale_b"] = run.fit.b;
        meta["success"] = run.success;
        nlohmann::json dampings;
        for (std::size_t e = 0; e < run.fit.damping.size(); ++e) dampings.push_back(run.fit.damping[e]);
        meta["damping"] = dampings;
    }
    std::ofstream mj(fs::path(out_dir) / "meta.json");
    mj << meta.dump(2) << "\n";
}

void write_calibration_json(const CalibrationRun& run, const std::string& path) {
    nlohmann::json j;
    j["kind"] = "calibration";
    j["r"] = run.cfg.cal_r;
    j["K"] = run.cfg.cal_K;
    j["shots_per_setting"] = run.cfg.cal_shots;
    for (const CalibrationTrial& t : run.trials) {
        nlohmann::json tj;
        tj["truth"] = {{"theta", t.truth.theta},
                       {"zeta", t.truth.zeta},
                       {"chi", t.truth.chi},
                       {"gamma", t.truth.gamma},
                       {"phi", t.truth.phi}};
        tj["estimate"] = {{"theta", t.estimate.params.theta},
                          {"zeta", t.estimate.params.zeta},
                          {"chi", t.estimate.params.chi},
                          {"gamma", t.estimate.params.gamma},
                          {"phi", t.estimate.params.phi}};
        tj["se"] = t.estimate.se;
        tj["principal_region_ok"] = t.estimate.principal_region_ok;
        tj["hellinger_residual"] = t.estimate.hellinger_residual;
        tj["wall_seconds"] = t.estimate.wall_seconds;
        nlohmann::json trace;
        for (const auto& rec : t.estimate.trace)
            trace.push_back({{"circuit", rec.circuit},
                             {"n", rec.n},
                             {"z_minus", rec.z_minus},
                             {"z_plus", rec.z_plus},
                             {"p_hat", rec.p_hat},
                             {"q_hat", rec.q_hat},
                             {"kept", rec.kept}});
        tj["trace"] = trace;
        j["trials"].push_back(tj);
    }
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

void write_stats_text(const std::vector<StatsRow>& rows, std::ostream& os) {
    os << "case,t_evol,t_circuit_us,depth,two_qubit,microwave,rz\n";
    for (const StatsRow& r : rows)
        os << r.name << "," << r.t_evol << "," << std::setprecision(3) << r.t_circuit_us << ","
           << r.depth << "," << r.two_qubit << "," << r.microwave << "," << r.rz << "\n";
}

}  // namespace fhsim
