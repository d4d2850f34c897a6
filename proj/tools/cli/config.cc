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

#include "config.h"

#include <charconv>
#include <cmath>
#include <set>

#include "qrcx/circuits.h"
#include "qrcx/expressivity.h"
#include "qrcx/optimize.h"
#include "qrcx/reservoir.h"

namespace qrcx::cli {

namespace {

constexpr std::string_view kNames[] = {"dynamics", "rec-vs-encodes", "eigentasks", "circuit-sweep",
                                       "optimize-sweep"};

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw ConfigError(what);
    }
}

nlohmann::ordered_json shots_json(double s) {
    if (std::isinf(s)) {
        return "inf";
    }
    return s;
}

double shots_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        return parse_shots(j.get<std::string>());
    }
    require(j.is_number(), "shots entries must be numbers or \"inf\"");
    return j.get<double>();
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& field) {
    try {
        field = j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

}  // namespace

std::string_view experiment_name(Experiment e) { return kNames[static_cast<int>(e)]; }

Experiment parse_experiment(std::string_view name) {
    for (int i = 0; i < 5; ++i) {
        if (kNames[i] == name) {
            return static_cast<Experiment>(i);
        }
    }
    throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

double parse_shots(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Inf") {
        return kInfiniteShots;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("cannot parse shot count '" + std::string(text) + "'");
    }
    return v;
}

ExperimentConfig defaults_for(Experiment e) {
    ExperimentConfig cfg;
    cfg.experiment = e;
    for (int id = 1; id <= kAnsatzCount; ++id) {
        cfg.circuits.push_back(id);
    }
    switch (e) {
        case Experiment::Dynamics:
            cfg.n_qubits = 3;
            cfg.encodes = 3;
            cfg.shots = {kInfiniteShots};
            break;
        case Experiment::RecVsEncodes:
            cfg.shots = {kInfiniteShots};
            cfg.param_samples = 1;
            cfg.circuits = {6};
            break;
        case Experiment::Eigentasks:
            cfg.encodes = 1;
            cfg.shots = {kInfiniteShots};
            cfg.realizations = 1;
            cfg.param_samples = 1;
            cfg.circuits = {6};
            break;
        case Experiment::CircuitSweep:
        case Experiment::OptimizeSweep:
            break;
    }
    return cfg;
}

void ExperimentConfig::validate() const {
    require(n_qubits >= 1 && n_qubits <= kMaxQubits, "n_qubits must lie in [1, " + std::to_string(kMaxQubits) + "]");
    require(encodes >= 1, "encodes must be at least 1");
    require(!shots.empty(), "need at least one shot count");
    for (double s : shots) {
        require(s >= 2.0 && (std::isinf(s) || s == std::floor(s)), "shot counts must be integers >= 2 or inf");
    }
    require(!out.empty(), "output directory must not be empty");
    require(threads >= 1, "threads must be at least 1");
    require(grid_points >= 2 * encodes + 1, "grid_points must be at least 2*encodes+1");
    require(realizations >= 1 && param_samples >= 1, "realizations and param_samples must be positive");
    require(layers >= 1, "layers must be positive");
    std::set<int> seen;
    for (int id : circuits) {
        require(id >= 1 && id <= kAnsatzCount, "circuit ids must lie in [1, " + std::to_string(kAnsatzCount) + "]");
        require(seen.insert(id).second, "duplicate circuit id " + std::to_string(id));
    }
    require(experiment != Experiment::Eigentasks || circuits.size() == 1, "eigentasks takes exactly one circuit");
    require(placement == "upfront" || placement == "interleaved", "placement must be upfront or interleaved");
    require(initial_state == "zero" || initial_state == "random-product",
            "initial_state must be zero or random-product");
    require(initial_state == "zero" || placement == "upfront", "random-product initial state needs upfront placement");
    require(j0 > 0.0 && std::isfinite(h_field) && tfim_dt > 0.0, "TFIM needs j0 > 0 and tfim_dt > 0");
    require(steps >= 0, "steps must be non-negative");
    require(budget >= restarts && restarts >= 1, "need restarts >= 1 and budget >= restarts");
    try {
        parse_opt_method(method);
        RunConfig rc;
        rc.n_qubits = n_qubits;
        rc.dt = dt;
        rc.v_mux = v_mux;
        rc.gamma = gamma;
        rc.input_mode = parse_input_mode(input_mode);
        rc.warmup_time = warmup_time;
        rc.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

nlohmann::ordered_json ExperimentConfig::to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = experiment_name(experiment);
    j["n_qubits"] = n_qubits;
    j["encodes"] = encodes;
    nlohmann::ordered_json s = nlohmann::ordered_json::array();
    for (double v : shots) {
        s.push_back(shots_json(v));
    }
    j["shots"] = s;
    j["seed"] = seed;
    j["out"] = out;
    j["threads"] = threads;
    j["grid_points"] = grid_points;
    j["realizations"] = realizations;
    j["param_samples"] = param_samples;
    j["circuits"] = circuits;
    j["layers"] = layers;
    j["placement"] = placement;
    j["initial_state"] = initial_state;
    j["h_field"] = h_field;
    j["j0"] = j0;
    j["tfim_dt"] = tfim_dt;
    j["steps"] = steps;
    j["dt"] = dt;
    j["v_mux"] = v_mux;
    j["gamma"] = gamma;
    j["input_mode"] = input_mode;
    j["warmup_time"] = warmup_time;
    j["budget"] = budget;
    j["restarts"] = restarts;
    j["method"] = method;
    return j;
}

void apply_json(ExperimentConfig& cfg, const nlohmann::json& j) {
    require(j.is_object(), "config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "experiment") {
            require(value.is_string(), "experiment must be a string");
            cfg.experiment = parse_experiment(value.get<std::string>());
        } else if (key == "shots") {
            cfg.shots.clear();
            if (value.is_array()) {
                for (const auto& v : value) {
                    cfg.shots.push_back(shots_from_json(v));
                }
            } else {
                cfg.shots.push_back(shots_from_json(value));
            }
        } else if (key == "n_qubits") {
            read(j, "n_qubits", cfg.n_qubits);
        } else if (key == "encodes") {
            read(j, "encodes", cfg.encodes);
        } else if (key == "seed") {
            read(j, "seed", cfg.seed);
        } else if (key == "out") {
            read(j, "out", cfg.out);
        } else if (key == "threads") {
            read(j, "threads", cfg.threads);
        } else if (key == "grid_points") {
            read(j, "grid_points", cfg.grid_points);
        } else if (key == "realizations") {
            read(j, "realizations", cfg.realizations);
        } else if (key == "param_samples") {
            read(j, "param_samples", cfg.param_samples);
        } else if (key == "circuits") {
            read(j, "circuits", cfg.circuits);
        } else if (key == "layers") {
            read(j, "layers", cfg.layers);
        } else if (key == "placement") {
            read(j, "placement", cfg.placement);
        } else if (key == "initial_state") {
            read(j, "initial_state", cfg.initial_state);
        } else if (key == "h_field") {
            read(j, "h_field", cfg.h_field);
        } else if (key == "j0") {
            read(j, "j0", cfg.j0);
        } else if (key == "tfim_dt") {
            read(j, "tfim_dt", cfg.tfim_dt);
        } else if (key == "steps") {
            read(j, "steps", cfg.steps);
        } else if (key == "dt") {
            read(j, "dt", cfg.dt);
        } else if (key == "v_mux") {
            read(j, "v_mux", cfg.v_mux);
        } else if (key == "gamma") {
            read(j, "gamma", cfg.gamma);
        } else if (key == "input_mode") {
            read(j, "input_mode", cfg.input_mode);
        } else if (key == "warmup_time") {
            read(j, "warmup_time", cfg.warmup_time);
        } else if (key == "budget") {
            read(j, "budget", cfg.budget);
        } else if (key == "restarts") {
            read(j, "restarts", cfg.restarts);
        } else if (key == "method") {
            read(j, "method", cfg.method);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

}  // namespace qrcx::cli
