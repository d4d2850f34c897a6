// Copyright 2026 The qrcx Authors
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

#include "cli.h"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "config.h"
#include "experiments.h"
#include "qrcx/channels.h"

namespace qrcx::cli {

namespace {

nlohmann::json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

struct Flags {
    std::optional<std::string> experiment, config, out, method, placement, input_mode, initial_state;
    std::optional<int> n_qubits, encodes, threads, grid_points, realizations, param_samples, steps, budget, restarts;
    std::optional<std::uint64_t> seed;
    std::optional<double> gamma, tfim_dt;
    std::vector<std::string> shots;
    std::vector<int> circuits;
    bool print_config = false;
};

ExperimentConfig resolve(const Flags& f) {
    nlohmann::json file = f.config ? load_config_file(*f.config) : nlohmann::json::object();
    if (!file.is_object()) {
        throw ConfigError("config file must hold a JSON object");
    }
    std::string name;
    if (f.experiment) {
        name = *f.experiment;
    } else if (file.contains("experiment") && file["experiment"].is_string()) {
        name = file["experiment"].get<std::string>();
    } else {
        throw ConfigError("no experiment given (use --experiment or the config file)");
    }
    ExperimentConfig cfg = defaults_for(parse_experiment(name));
    apply_json(cfg, file);
    cfg.experiment = parse_experiment(name);

    auto set = [](auto& field, const auto& opt) {
        if (opt) {
            field = *opt;
        }
    };
    set(cfg.n_qubits, f.n_qubits);
    set(cfg.encodes, f.encodes);
    set(cfg.seed, f.seed);
    set(cfg.out, f.out);
    set(cfg.threads, f.threads);
    set(cfg.grid_points, f.grid_points);
    set(cfg.realizations, f.realizations);
    set(cfg.param_samples, f.param_samples);
    set(cfg.steps, f.steps);
    set(cfg.budget, f.budget);
    set(cfg.restarts, f.restarts);
    set(cfg.method, f.method);
    set(cfg.placement, f.placement);
    set(cfg.initial_state, f.initial_state);
    set(cfg.input_mode, f.input_mode);
    set(cfg.gamma, f.gamma);
    set(cfg.tfim_dt, f.tfim_dt);
    if (!f.shots.empty()) {
        cfg.shots.clear();
        for (const std::string& s : f.shots) {
            cfg.shots.push_back(parse_shots(s));
        }
    }
    if (!f.circuits.empty()) {
        cfg.circuits = f.circuits;
    }
    cfg.validate();
    return cfg;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qrcx: quantum reservoir expressivity experiments"};
    app.set_version_flag("--version", QRCX_VERSION);
    Flags f;
    app.add_option("--experiment", f.experiment,
                   "dynamics | rec-vs-encodes | eigentasks | circuit-sweep | optimize-sweep");
    app.add_option("--config", f.config, "JSON config file; flags override its keys");
    app.add_option("--n-qubits", f.n_qubits, "register size N");
    app.add_option("--encodes", f.encodes, "encoding gates r (largest r for rec-vs-encodes)");
    app.add_option("--shots", f.shots, "shot counts S, comma separated; 'inf' allowed")->delimiter(',');
    app.add_option("--seed", f.seed, "base seed");
    app.add_option("--out", f.out, "output directory");
    app.add_option("--threads", f.threads, "worker threads");
    app.add_option("--grid-points", f.grid_points, "input grid size");
    app.add_option("--realizations", f.realizations, "encoding-axis draws");
    app.add_option("--param-samples", f.param_samples, "parameter draws per axis draw");
    app.add_option("--circuits", f.circuits, "ansatz ids, comma separated")->delimiter(',');
    app.add_option("--steps", f.steps, "input steps (dynamics)");
    app.add_option("--gamma", f.gamma, "dephasing rate (dynamics)");
    app.add_option("--input-mode", f.input_mode, "reset | rotations (dynamics)");
    app.add_option("--tfim-dt", f.tfim_dt, "evolution time of the TFIM reservoir unitary");
    app.add_option("--placement", f.placement, "upfront | interleaved");
    app.add_option("--initial-state", f.initial_state, "zero | random-product (expressivity experiments)");
    app.add_option("--budget", f.budget, "objective evaluations per optimization");
    app.add_option("--restarts", f.restarts, "optimizer restarts");
    app.add_option("--method", f.method, "simplex | coordinate");
    app.add_flag("--print-config", f.print_config, "print the resolved config and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        ExperimentConfig cfg = resolve(f);
        if (f.print_config) {
            out << cfg.to_json().dump(2) << "\n";
            return kExitOk;
        }
        for (const std::string& path : run_experiment(cfg)) {
            out << path << "\n";
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace qrcx::cli
