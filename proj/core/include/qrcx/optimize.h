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
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qrcx/circuits.h"
#include "qrcx/expressivity.h"

namespace qrcx {

enum class OptMethod { Simplex, Coordinate };

std::string_view opt_method_name(OptMethod m);
OptMethod parse_opt_method(std::string_view name);

struct OptConfig {
    int budget = 2000;  ///< total objective evaluations across all restarts
    int restarts = 8;
    double shots = 1e4;  ///< kInfiniteShots allowed
    std::uint64_t seed = 0;
    OptMethod method = OptMethod::Simplex;
    int threads = 1;

    void validate() const;
};

struct EvalRecord {
    int eval_index = 0;
    int restart = 0;
    double value = 0.0;
    double best_so_far = 0.0;
    std::vector<double> params;
};

struct OptResult {
    std::vector<double> best_params;
    double best_value = 0.0;
    /// Best among the random starting points alone.
    double best_initial = 0.0;
    std::vector<EvalRecord> history;
    std::string notice;

    /// eval_index,restart,params_hash,rec,best_so_far
    void write_history_csv(std::ostream& out) const;
};

/// 64-bit FNV-1a over the IEEE-754 bytes of the parameters, as 16 hex digits.
std::string params_hash(std::span<const double> params);

/// Wraps every angle into [0, 2 pi).
void wrap_angles(std::span<double> params);

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free maximization over the torus [0, 2 pi)^dim. Restart k starts
/// from a uniform point drawn from derive_seed(seed, {k}) and gets an equal
/// share of the budget (its first evaluation is the starting point). The
/// objective must be safe to call concurrently when threads > 1.
OptResult maximize(const Objective& f, int dim, const OptConfig& cfg);

/// Maximizes analytic finite-shot REC of `ansatz` used as reservoir behind the
/// evaluator's encoding layer.
OptResult optimize_circuit(const Circuit& ansatz, const RecEvaluator& evaluator, const OptConfig& cfg);

}  // namespace qrcx
