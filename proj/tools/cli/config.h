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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace qrcx::cli {

enum class Experiment { Dynamics, RecVsEncodes, Eigentasks, CircuitSweep, OptimizeSweep };

std::string_view experiment_name(Experiment e);
Experiment parse_experiment(std::string_view name);

/// Bad flags, unreadable config files, out-of-range values. Maps to exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::RecVsEncodes;
    int n_qubits = 4;
    int encodes = 8;  ///< r; rec-vs-encodes sweeps 1..encodes
    std::vector<double> shots{1e4};
    std::uint64_t seed = 1;
    std::string out = "out";
    int threads = 1;

    int grid_points = 200;
    int realizations = 30;   ///< axis draws
    int param_samples = 20;  ///< parameter (or coupling) draws per axis draw
    std::vector<int> circuits;
    int layers = 1;
    std::string placement = "upfront";
    /// "zero" (|0...0>) or "random-product" (one Haar qubit state per qubit, per axis draw).
    std::string initial_state = "zero";

    // TFIM used as a reservoir unitary exp(-i H tfim_dt).
    double h_field = 1.0;
    double j0 = 1.0;
    double tfim_dt = 3.0;

    // dynamics
    int steps = 50;
    double dt = 3.0;
    int v_mux = 4;
    double gamma = 0.01;
    std::string input_mode = "reset";
    double warmup_time = 20.0;

    // optimize-sweep
    int budget = 2000;
    int restarts = 8;
    std::string method = "simplex";

    void validate() const;
    nlohmann::ordered_json to_json() const;
};

ExperimentConfig defaults_for(Experiment e);

/// Overwrites fields present in `j`; unknown keys are a ConfigError.
void apply_json(ExperimentConfig& cfg, const nlohmann::json& j);

/// Accepts numbers or "inf".
double parse_shots(std::string_view text);

}  // namespace qrcx::cli
