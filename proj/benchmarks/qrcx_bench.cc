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

#include <numbers>

#include "benchmark/benchmark.h"

#include "qrcx/channels.h"
#include "qrcx/circuits.h"
#include "qrcx/expressivity.h"
#include "qrcx/linalg.h"
#include "qrcx/optimize.h"
#include "qrcx/reservoir.h"
#include "qrcx/tfim.h"

using namespace qrcx;

namespace {

std::vector<double> angles(int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> p(count);
    for (double& x : p) {
        x = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return p;
}

Circuit encoding(int n, int r) {
    Rng rng(7);
    return encoding_layer(n, sample_axes(r, rng));
}

}  // namespace

static void BM_expm_i(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    TfimSpec spec{n, 1.0, 1.0, 3};
    CMatrix h = hamiltonian(spec, sample_couplings(spec));
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagator(h, 0.75));
    }
}
BENCHMARK(BM_expm_i)->Arg(3)->Arg(4)->Arg(6);

static void BM_compile_circuit6(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Circuit c = build_ansatz({6, 1}, n);
    std::vector<double> p = angles(c.n_params(), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compile(c, p, 0.0));
    }
}
BENCHMARK(BM_compile_circuit6)->Arg(3)->Arg(4)->Arg(6);

static void BM_feature_table(benchmark::State& state) {
    Circuit c = build_ansatz({6, 1}, 4);
    ReservoirUnitary res = ReservoirUnitary::from_circuit(c, angles(c.n_params(), 2));
    RecEvaluator ev(encoding(4, 8), uniform_grid(kDefaultGridPoints));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ev.table(res));
    }
}
BENCHMARK(BM_feature_table);

static void BM_eigentasks_svd(benchmark::State& state) {
    Circuit c = build_ansatz({6, 1}, 4);
    RecEvaluator ev(encoding(4, 8), uniform_grid(kDefaultGridPoints));
    FeatureTable ft = ev.table(ReservoirUnitary::from_circuit(c, angles(c.n_params(), 3)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigentasks(ft));
    }
}
BENCHMARK(BM_eigentasks_svd);

static void BM_eigentasks_moments(benchmark::State& state) {
    Circuit c = build_ansatz({6, 1}, 4);
    RecEvaluator ev(encoding(4, 8), uniform_grid(kDefaultGridPoints));
    FeatureTable ft = ev.table(ReservoirUnitary::from_circuit(c, angles(c.n_params(), 3)));
    RMatrix g = second_moment(ft), d = shot_noise_moment(ft);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigentasks(g, d));
    }
}
BENCHMARK(BM_eigentasks_moments);

// One optimizer objective evaluation: compile, propagate, eigentasks, C_T(S).
static void BM_objective(benchmark::State& state) {
    Circuit c = build_ansatz({6, 1}, 4);
    RecEvaluator ev(encoding(4, 8), uniform_grid(kDefaultGridPoints));
    std::vector<double> p = angles(c.n_params(), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rec_finite(ev.eigentasks(ReservoirUnitary::from_circuit(c, p)), 1e4));
    }
}
BENCHMARK(BM_objective);

static void BM_gate_model_step(benchmark::State& state) {
    RunConfig cfg;
    cfg.warmup_time = 0.0;
    TfimSpec spec{3, 1.0, 1.0, 5};
    ReservoirUnitary res = tfim_as_reservoir(spec, sample_couplings(spec), cfg.substep());
    std::vector<double> u(50, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_gate_model(cfg, res, u));
    }
}
BENCHMARK(BM_gate_model_step);

static void BM_sample_features(benchmark::State& state) {
    RVector p = RVector::Constant(16, 1.0 / 16);
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_features(p, 10000, rng));
    }
}
BENCHMARK(BM_sample_features);

BENCHMARK_MAIN();
