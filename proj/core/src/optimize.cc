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

#include "qrcx/optimize.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "qrcx/parallel.h"
#include "qrcx/rng.h"

namespace qrcx {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RestartLog {
    std::vector<EvalRecord> evals;
};

// Counts evaluations against the restart's share of the budget.
class BudgetedObjective {
  public:
    BudgetedObjective(const Objective& f, int budget, RestartLog& log, int restart)
        : f_(f), budget_(budget), log_(log), restart_(restart) {}

    bool exhausted() const { return used_ >= budget_; }

    // Returns -inf once the budget is gone so the caller simply stops improving.
    double operator()(std::vector<double> x) {
        if (exhausted()) {
            return -std::numeric_limits<double>::infinity();
        }
        wrap_angles(x);
        double v = f_(x);
        ++used_;
        EvalRecord rec;
        rec.restart = restart_;
        rec.value = v;
        rec.params = std::move(x);
        log_.evals.push_back(std::move(rec));
        return v;
    }

  private:
    const Objective& f_;
    int budget_;
    int used_ = 0;
    RestartLog& log_;
    int restart_;
};

// Nelder-Mead on -f with standard coefficients (1, 2, 1/2, 1/2).
void run_simplex(BudgetedObjective& f, std::vector<double> x0, double first_value) {
    const std::size_t n = x0.size();
    const double step = 1.0;
    std::vector<std::vector<double>> pts{x0};
    std::vector<double> vals{first_value};
    for (std::size_t i = 0; i < n && !f.exhausted(); ++i) {
        std::vector<double> p = x0;
        p[i] += step;
        vals.push_back(f(p));
        pts.push_back(std::move(p));
    }
    if (pts.size() != n + 1) {
        return;
    }
    auto eval = [&](const std::vector<double>& p) { return f(p); };
    std::vector<std::size_t> order(n + 1);
    while (!f.exhausted()) {
        std::iota(order.begin(), order.end(), 0);
        // Descending by value: order[0] best, order[n] worst. Stable for ties.
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
        const std::size_t best = order[0], worst = order[n], second_worst = order[n - 1];
        double spread = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t c = 0; c < n; ++c) {
                spread = std::max(spread, std::abs(pts[order[i]][c] - pts[best][c]));
            }
        }
        if (spread < 1e-9) {
            return;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < n; ++c) {
                centroid[c] += pts[order[i]][c] / static_cast<double>(n);
            }
        }
        auto along = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t c = 0; c < n; ++c) {
                p[c] = centroid[c] + t * (pts[worst][c] - centroid[c]);
            }
            return p;
        };
        std::vector<double> xr = along(-1.0);
        double fr = eval(xr);
        if (fr > vals[best]) {
            std::vector<double> xe = along(-2.0);
            double fe = eval(xe);
            if (fe > fr) {
                pts[worst] = std::move(xe);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(xr);
                vals[worst] = fr;
            }
            continue;
        }
        if (fr > vals[second_worst]) {
            pts[worst] = std::move(xr);
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr > vals[worst];
        std::vector<double> xc = along(outside ? -0.5 : 0.5);
        double fc = eval(xc);
        if ((outside && fc >= fr) || (!outside && fc > vals[worst])) {
            pts[worst] = std::move(xc);
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 1; i <= n && !f.exhausted(); ++i) {
            std::size_t idx = order[i];
            for (std::size_t c = 0; c < n; ++c) {
                pts[idx][c] = pts[best][c] + 0.5 * (pts[idx][c] - pts[best][c]);
            }
            vals[idx] = eval(pts[idx]);
        }
    }
}

// Compass search: +/- step along each axis, halving the step after a sweep
// without improvement.
void run_coordinate(BudgetedObjective& f, std::vector<double> x, double fx) {
    double step = 1.0;
    while (!f.exhausted() && step > 1e-6) {
        bool improved = false;
        for (std::size_t c = 0; c < x.size() && !f.exhausted(); ++c) {
            for (double dir : {1.0, -1.0}) {
                std::vector<double> p = x;
                p[c] += dir * step;
                double v = f(p);
                if (v > fx) {
                    x = std::move(p);
                    fx = v;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
}

}  // namespace

std::string_view opt_method_name(OptMethod m) { return m == OptMethod::Simplex ? "simplex" : "coordinate"; }

OptMethod parse_opt_method(std::string_view name) {
    if (name == "simplex" || name == "nelder-mead") {
        return OptMethod::Simplex;
    }
    if (name == "coordinate") {
        return OptMethod::Coordinate;
    }
    throw std::invalid_argument("unknown optimization method '" + std::string(name) + "'");
}

void OptConfig::validate() const {
    if (restarts < 1) {
        throw std::invalid_argument("OptConfig: need at least one restart");
    }
    if (budget < restarts) {
        throw std::invalid_argument("OptConfig: budget must be at least the number of restarts");
    }
    if (!(shots >= 1.0)) {
        throw std::invalid_argument("OptConfig: shots must be at least 1");
    }
}

std::string params_hash(std::span<const double> params) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double p : params) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &p, sizeof(double));
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void wrap_angles(std::span<double> params) {
    for (double& p : params) {
        p = std::fmod(p, kTwoPi);
        if (p < 0.0) {
            p += kTwoPi;
        }
        if (p >= kTwoPi) {
            p = 0.0;
        }
    }
}

void OptResult::write_history_csv(std::ostream& out) const {
    out << "eval_index,restart,params_hash,rec,best_so_far\n";
    char buf[128];
    for (const EvalRecord& e : history) {
        std::snprintf(buf, sizeof buf, "%d,%d,%s,%.17g,%.17g\n", e.eval_index, e.restart,
                      params_hash(e.params).c_str(), e.value, e.best_so_far);
        out << buf;
    }
}

OptResult maximize(const Objective& f, int dim, const OptConfig& cfg) {
    cfg.validate();
    if (dim < 1) {
        throw std::invalid_argument("maximize: dimension must be positive");
    }
    const auto restarts = static_cast<std::size_t>(cfg.restarts);
    std::vector<RestartLog> logs(restarts);
    std::vector<double> initial(restarts, 0.0);
    parallel_for(restarts, cfg.threads, [&](std::size_t k) {
        int share = cfg.budget / cfg.restarts + (static_cast<int>(k) < cfg.budget % cfg.restarts ? 1 : 0);
        BudgetedObjective budgeted(f, share, logs[k], static_cast<int>(k));
        Rng rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(k)}));
        std::vector<double> x0(static_cast<std::size_t>(dim));
        for (double& v : x0) {
            v = rng.uniform(0.0, kTwoPi);
        }
        double f0 = budgeted(x0);
        initial[k] = f0;
        if (cfg.method == OptMethod::Simplex) {
            run_simplex(budgeted, x0, f0);
        } else {
            run_coordinate(budgeted, x0, f0);
        }
    });

    OptResult result;
    result.best_value = -std::numeric_limits<double>::infinity();
    result.best_initial = *std::max_element(initial.begin(), initial.end());
    int index = 0;
    double incumbent = -std::numeric_limits<double>::infinity();
    for (RestartLog& log : logs) {
        for (EvalRecord& e : log.evals) {
            e.eval_index = index++;
            if (e.value > incumbent) {
                incumbent = e.value;
            }
            e.best_so_far = incumbent;
            // Strict '>' keeps the earliest restart on ties.
            if (e.value > result.best_value) {
                result.best_value = e.value;
                result.best_params = e.params;
            }
            result.history.push_back(std::move(e));
        }
    }
    return result;
}

OptResult optimize_circuit(const Circuit& ansatz, const RecEvaluator& evaluator, const OptConfig& cfg) {
    cfg.validate();
    auto objective = [&](std::span<const double> params) {
        return rec_finite(evaluator.eigentasks(ReservoirUnitary::from_circuit(ansatz, params)), cfg.shots);
    };
    if (ansatz.n_params() == 0) {
        OptResult result;
        result.best_value = objective({});
        result.best_initial = result.best_value;
        result.history.push_back(EvalRecord{0, 0, result.best_value, result.best_value, {}});
        result.notice = "circuit has no parameters; returned unchanged";
        return result;
    }
    return maximize(objective, ansatz.n_params(), cfg);
}

}  // namespace qrcx
