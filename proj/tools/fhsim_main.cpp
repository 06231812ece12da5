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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fhsim/experiments.hpp"
#include "fhsim/kernels.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitEmptyPostselection = 4;

int run_command(const std::string& config_path, const std::string& out_dir, long seed_override, int jobs,
                bool noiseless) {
    fhsim::ExperimentConfig cfg = fhsim::ExperimentConfig::from_file(config_path);
    if (seed_override >= 0) cfg.seed = static_cast<uint64_t>(seed_override);
    if (noiseless) cfg.noisy = false;
    if (cfg.kind == "separation" || cfg.kind == "mitigation-ablation") {
        const auto run = fhsim::run_separation(cfg, jobs, cfg.kind == "mitigation-ablation");
        fhsim::write_separation_outputs(run, out_dir);
        if (cfg.kind == "mitigation-ablation") {
            for (const auto& sc : run.cases) {
                if (!sc.has_noisy) continue;
                std::ofstream csv(std::filesystem::path(out_dir) /
                                  ("mitigation_u" + std::to_string(static_cast<int>(sc.u)) + ".csv"));
                fhsim::write_mitigation_csv(csv, sc.raw.front(), sc.post.front(), sc.averaged, sc.rescaled);
            }
        }
        std::cout << "wrote " << out_dir << "\n";
    } else if (cfg.kind == "wavepacket") {
        const auto run = fhsim::run_wavepacket(cfg, jobs);
        fhsim::write_wavepacket_outputs(run, out_dir);
        std::cout << "wrote " << out_dir << "\n";
    } else if (cfg.kind == "calibration") {
        const auto run = fhsim::run_calibration(cfg);
        std::filesystem::create_directories(out_dir);
        fhsim::write_calibration_json(run, (std::filesystem::path(out_dir) / "calibration.json").string());
        std::cout << "wrote " << out_dir << "/calibration.json\n";
    } else {
        throw fhsim::ConfigError("unknown experiment kind: " + cfg.kind);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fhsim: Fermi-Hubbard dynamics simulator and calibration toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    long seed = -1;
    int jobs = 1;
    bool noiseless = false;

    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--seed", seed, "override run seed");
    run->add_option("--jobs", jobs, "worker threads");
    run->add_flag("--noiseless", noiseless, "force the noiseless pipeline");

    auto* stats = app.add_subcommand("stats", "print circuit statistics");
    std::string stats_config;
    stats->add_option("--config", stats_config, "experiment config (defaults to the published table rows)");

    auto* cal = app.add_subcommand("calibrate", "run Floquet calibration against the synthetic device");
    std::string cal_config, cal_out = "calibration.json";
    long cal_seed = -1;
    cal->add_option("--config", cal_config, "calibration config file")->required();
    cal->add_option("--out", cal_out, "output JSON path");
    cal->add_option("--seed", cal_seed, "override run seed");

    auto* report = app.add_subcommand("report", "run the mitigation ablation and emit its CSV report");
    std::string rep_config, rep_out = "mitigation.csv";
    int rep_jobs = 1;
    report->add_option("--config", rep_config, "experiment config file")->required();
    report->add_option("--out", rep_out, "output CSV path");
    report->add_option("--jobs", rep_jobs, "worker threads");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(config_path, out_dir, seed, jobs, noiseless);
        if (stats->parsed()) {
            const auto rows = stats_config.empty()
                                  ? fhsim::table_reference_stats()
                                  : fhsim::circuit_stats(fhsim::ExperimentConfig::from_file(stats_config));
            fhsim::write_stats_text(rows, std::cout);
            return 0;
        }
        if (cal->parsed()) {
            fhsim::ExperimentConfig cfg = fhsim::ExperimentConfig::from_file(cal_config);
            if (cfg.kind != "calibration") throw fhsim::ConfigError("calibrate requires kind = calibration");
            if (cal_seed >= 0) cfg.seed = static_cast<uint64_t>(cal_seed);
            const auto result = fhsim::run_calibration(cfg);
            fhsim::write_calibration_json(result, cal_out);
            std::cout << "wrote " << cal_out << "\n";
            return 0;
        }
        if (report->parsed()) {
            fhsim::ExperimentConfig cfg = fhsim::ExperimentConfig::from_file(rep_config);
            cfg.kind = "mitigation-ablation";
            cfg.noisy = true;
            const auto runr = fhsim::run_separation(cfg, rep_jobs, true);
            std::ofstream csv(rep_out);
            for (const auto& sc : runr.cases) {
                if (!sc.has_noisy) continue;
                fhsim::write_mitigation_csv(csv, sc.raw.front(), sc.post.front(), sc.averaged, sc.rescaled);
            }
            std::cout << "wrote " << rep_out << "\n";
            return 0;
        }
    } catch (const fhsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const fhsim::gates::InfeasibleDecomposition& e) {
        std::cerr << "infeasible decomposition: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const fhsim::EmptyPostselection& e) {
        std::cerr << "empty postselection: " << e.what() << "\n";
        return kExitEmptyPostselection;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
