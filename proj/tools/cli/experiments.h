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
#include <string>
#include <vector>

#include "config.h"
#include "qrcx/reservoir.h"

namespace qrcx::cli {

struct DynamicsResult {
    Trace physical;
    Trace gate;
    double max_deviation = 0.0;
    std::vector<double> inputs;
    std::string couplings_json;
};

struct RecRow {
    std::string reservoir;  ///< "identity", "circuit<id>", "tfim"
    int r = 0;
    std::uint64_t realization_seed = 0;
    double shots = 0.0;
    double rec = 0.0;
};

struct RecSummary {
    std::string reservoir;
    int r = 0;
    double shots = 0.0;
    bool optimized = false;
    double mean = 0.0;
    double std = 0.0;  ///< sample standard deviation
    int n = 0;
};

struct RecSweepResult {
    std::vector<RecRow> rows;
    std::vector<RecSummary> summary;
};

struct EigentaskResult {
    std::vector<double> u_grid;
    std::vector<double> beta_sq;
    RMatrix values;  ///< |grid| x rank
    double fourier_residual = 0.0;
    int fourier_active = 0;
};

struct OptimizeSweepResult {
    RecSweepResult random;
    RecSweepResult optimized;
    std::string history_csv;
};

DynamicsResult compute_dynamics(const ExperimentConfig& cfg);
RecSweepResult compute_rec_vs_encodes(const ExperimentConfig& cfg);
EigentaskResult compute_eigentasks(const ExperimentConfig& cfg);
RecSweepResult compute_circuit_sweep(const ExperimentConfig& cfg);
OptimizeSweepResult compute_optimize_sweep(const ExperimentConfig& cfg);

/// Each writes its CSVs plus a .meta.json sidecar per file into cfg.out.
/// Returns the written paths. Throws InvariantViolation after writing when a
/// run-level invariant fails.
std::vector<std::string> cmd_dynamics(const ExperimentConfig& cfg);
std::vector<std::string> cmd_rec_vs_encodes(const ExperimentConfig& cfg);
std::vector<std::string> cmd_eigentasks(const ExperimentConfig& cfg);
std::vector<std::string> cmd_circuit_sweep(const ExperimentConfig& cfg);
std::vector<std::string> cmd_optimize_sweep(const ExperimentConfig& cfg);

std::vector<std::string> run_experiment(const ExperimentConfig& cfg);

}  // namespace qrcx::cli
