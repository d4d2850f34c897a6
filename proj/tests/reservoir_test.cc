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

#include "qrcx/reservoir.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"

#include "qrcx/expressivity.h"

#include "test_util.h"

using namespace qrcx;
using namespace qrcx::testing;

namespace {

std::vector<double> random_inputs(int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> u(count);
    for (double& x : u) {
        x = rng.uniform();
    }
    return u;
}

// z-diagonal product unitary: commutes with every sigma_z and with dephasing.
ReservoirUnitary diagonal_reservoir(int n) {
    CMatrix u = rz(0.37);
    for (int q = 1; q < n; ++q) {
        u = kron(u, rz(0.37 * (q + 1)));
    }
    return {n, u, "diag"};
}

}  // namespace

TEST(run_config, validation_and_substeps) {
    RunConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_DOUBLE_EQ(cfg.substep(), 0.75);
    EXPECT_EQ(cfg.warmup_substeps(), 26);
    cfg.v_mux = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.v_mux = 1;
    cfg.dt = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    EXPECT_EQ(parse_input_mode(input_mode_name(InputMode::Rotations)), InputMode::Rotations);
}

TEST(run_pipelines, agree_in_reset_mode) {
    RunConfig cfg;
    cfg.seed = 11;
    TfimSpec spec{3, 1.0, 1.0, 5};
    std::vector<double> u = random_inputs(50, 1);
    Trace phys = run_physical(cfg, spec, u);
    Trace gate = run_gate_model(cfg, tfim_as_reservoir(spec, sample_couplings(spec), cfg.substep()), u);
    ASSERT_EQ(phys.readouts(), static_cast<std::size_t>(cfg.warmup_substeps() + 50 * cfg.v_mux));
    EXPECT_EQ(phys.sigma_z.cols(), 3);
    EXPECT_LT(max_deviation(phys, gate), 1e-10);
    EXPECT_EQ(phys.times, gate.times);
    EXPECT_EQ(phys.input_step, gate.input_step);
}

TEST(run_pipelines, agree_in_rotation_mode) {
    RunConfig cfg;
    cfg.seed = 12;
    cfg.input_mode = InputMode::Rotations;
    cfg.gamma = 0.2;
    cfg.v_mux = 3;
    TfimSpec spec{3, 0.7, 1.4, 6};
    std::vector<double> u = random_inputs(30, 2);
    Trace phys = run_physical(cfg, spec, u);
    Trace gate = run_gate_model(cfg, tfim_as_reservoir(spec, sample_couplings(spec), cfg.substep()), u);
    EXPECT_LT(max_deviation(phys, gate), 1e-10);
    // Inputs matter.
    std::vector<double> zeros(30, 0.0);
    EXPECT_GT(max_deviation(phys, run_physical(cfg, spec, zeros)), 1e-3);
}

TEST(run_pipelines, step_layout) {
    RunConfig cfg;
    cfg.seed = 1;
    cfg.warmup_time = 1.5;
    TfimSpec spec{3, 1.0, 1.0, 1};
    Trace t = run_physical(cfg, spec, std::vector<double>{0.2, 0.9});
    ASSERT_EQ(t.readouts(), 2u + 8u);
    EXPECT_EQ(t.input_step, (std::vector<int>{-1, -1, 0, 0, 0, 0, 1, 1, 1, 1}));
    for (std::size_t i = 0; i < t.readouts(); ++i) {
        EXPECT_NEAR(t.times[i], 0.75 * static_cast<double>(i + 1), 1e-12);
    }
    EXPECT_EQ(t.inputs, (std::vector<double>{0.2, 0.9}));
}

TEST(run_pipelines, rejects_inputs_outside_unit_interval) {
    RunConfig cfg;
    TfimSpec spec{3, 1.0, 1.0, 1};
    EXPECT_THROW(run_physical(cfg, spec, std::vector<double>{0.5, 1.2}), std::invalid_argument);
    EXPECT_THROW(run_gate_model(cfg, ReservoirUnitary::identity(3), std::vector<double>{-0.1}),
                 std::invalid_argument);
    EXPECT_THROW(run_gate_model(cfg, ReservoirUnitary::identity(2), std::vector<double>{0.1}),
                 std::invalid_argument);
}

TEST(run_gate_model, reset_extremes_read_immediately) {
    // With an identity reservoir the first readout after the encode sees the reset qubit untouched.
    RunConfig cfg;
    cfg.seed = 3;
    cfg.warmup_time = 0.0;
    cfg.gamma = 0.5;
    std::vector<double> zeros(5, 0.0), ones(5, 1.0);
    Trace t0 = run_gate_model(cfg, ReservoirUnitary::identity(3), zeros);
    Trace t1 = run_gate_model(cfg, ReservoirUnitary::identity(3), ones);
    for (Eigen::Index r = 0; r < t0.sigma_z.rows(); ++r) {
        EXPECT_NEAR(t0.sigma_z(r, 0), 1.0, 1e-12);
        EXPECT_NEAR(t1.sigma_z(r, 0), -1.0, 1e-12);
    }
}

TEST(run_gate_model, strong_dephasing_with_diagonal_reservoir_freezes_sigma_z) {
    RunConfig cfg;
    cfg.seed = 4;
    cfg.gamma = 1e6;
    cfg.warmup_time = 30.0;
    Trace t = run_gate_model(cfg, diagonal_reservoir(3), {});
    ASSERT_GT(t.readouts(), 10u);
    for (Eigen::Index r = 1; r < t.sigma_z.rows(); ++r) {
        EXPECT_LT((t.sigma_z.row(r) - t.sigma_z.row(0)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(run_gate_model, pure_state_stays_pure_without_dephasing) {
    RunConfig cfg;
    cfg.seed = 5;
    cfg.gamma = 0.0;
    TfimSpec spec{3, 1.0, 1.0, 5};
    ReservoirUnitary res = tfim_as_reservoir(spec, sample_couplings(spec), cfg.substep());
    DensityMatrix rho = initial_state(cfg);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
    for (int s = 0; s < 100; ++s) {
        rho = apply_unitary(rho, res.matrix());
    }
    EXPECT_NEAR(rho.purity(), 1.0, 1e-10);
}

TEST(run_gate_model, long_runs_stay_bounded) {
    RunConfig cfg;
    cfg.seed = 6;
    cfg.input_mode = InputMode::Rotations;
    TfimSpec spec{3, 1.0, 1.0, 9};
    ReservoirUnitary res = tfim_as_reservoir(spec, sample_couplings(spec), cfg.substep());
    Trace t = run_gate_model(cfg, res, random_inputs(1000, 3));
    EXPECT_LE(t.max_abs_sigma_z(), 1.0 + 1e-9);
}

TEST(trace, csv_layout) {
    RunConfig cfg;
    cfg.seed = 1;
    cfg.warmup_time = 0.0;
    cfg.v_mux = 1;
    Trace t = run_gate_model(cfg, ReservoirUnitary::identity(3), std::vector<double>{0.0});
    std::ostringstream out;
    t.write_csv(out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "time,input_step,qubit,sigma_z");
    std::getline(in, line);
    EXPECT_EQ(line.substr(0, 6), "3,0,0,");
    EXPECT_NEAR(std::stod(line.substr(6)), 1.0, 1e-15);
    int rows = 1;
    while (std::getline(in, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 3);
}

TEST(features_single_cycle, closed_forms) {
    Circuit empty(2);
    RVector p = features_single_cycle(empty, ReservoirUnitary::identity(2), {}, 0.3);
    EXPECT_EQ(p, (RVector(4) << 1, 0, 0, 0).finished());

    std::vector<RotationAxis> z_axis{RotationAxis::z()};
    Circuit z_enc = encoding_layer(2, z_axis);
    for (double u : {0.0, 1.0, 2.5, 5.0}) {
        RVector pz = features_single_cycle(z_enc, ReservoirUnitary::identity(2), {}, u);
        EXPECT_NEAR(pz(0), 1.0, 1e-15);
    }

    std::vector<RotationAxis> x_axis{RotationAxis::x()};
    Circuit x_enc = encoding_layer(1, x_axis);
    for (double u : {0.0, 0.4, 2.0, 4.4}) {
        RVector px = features_single_cycle(x_enc, ReservoirUnitary::identity(1), {}, u);
        EXPECT_NEAR(px(0), std::pow(std::cos(u / 2), 2), 1e-14);
        EXPECT_NEAR(px(1), std::pow(std::sin(u / 2), 2), 1e-14);
    }
}

TEST(features_single_cycle, probability_vectors_for_random_circuits) {
    Rng rng(7);
    Circuit ansatz = build_ansatz({6, 1}, 4);
    std::vector<double> params(ansatz.n_params());
    for (double& x : params) {
        x = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    ReservoirUnitary res = ReservoirUnitary::from_circuit(ansatz, params);
    Circuit enc = encoding_layer(4, sample_axes(6, rng));
    for (EncodingPlacement placement : {EncodingPlacement::Upfront, EncodingPlacement::Interleaved}) {
        for (double u : uniform_grid(25)) {
            RVector p = features_single_cycle(enc, res, {}, u, placement);
            EXPECT_NEAR(p.sum(), 1.0, 1e-12);
            EXPECT_GE(p.minCoeff(), -1e-12);
        }
    }
}

TEST(encoded_states, match_compiled_circuit) {
    Rng rng(8);
    Circuit enc = encoding_layer(3, sample_axes(5, rng));
    std::vector<double> grid{0.0, 0.7, 3.1};
    CMatrix states = encoded_states(enc, {}, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        CVector expected = compile(enc, {}, grid[j]).col(0);
        EXPECT_LT((states.col(static_cast<Eigen::Index>(j)) - expected).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(encoded_states, custom_initial_state) {
    Rng rng(9);
    Circuit enc = encoding_layer(3, sample_axes(4, rng));
    CVector psi = haar_state(3, rng);
    std::vector<double> grid{0.2, 1.9};
    CMatrix states = encoded_states(enc, {}, grid, psi);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        CVector expected = compile(enc, {}, grid[j]) * psi;
        EXPECT_LT((states.col(static_cast<Eigen::Index>(j)) - expected).cwiseAbs().maxCoeff(), 1e-14);
    }
    EXPECT_THROW(encoded_states(enc, {}, grid, CVector::Ones(4)), std::invalid_argument);
}

TEST(random_product_state, is_normalized_product_and_seeded) {
    Rng a(3), b(3);
    CVector psi = random_product_state(4, a);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
    EXPECT_TRUE(psi == random_product_state(4, b));
    // Every bipartition has Schmidt rank one.
    for (int cut = 1; cut < 4; ++cut) {
        Eigen::Map<const CMatrix> m(psi.data(), 1 << (4 - cut), 1 << cut);
        Eigen::JacobiSVD<CMatrix> svd(m);
        EXPECT_NEAR(svd.singularValues()(0), 1.0, 1e-12);
        EXPECT_LT(svd.singularValues()(1), 1e-12);
    }
}

// The TFIM conserves Z-parity; from |0...0> one Fourier dimension stays invisible.
TEST(tfim_reservoir, initial_state_parity_limits_rank) {
    Rng rng(12);
    Circuit enc = encoding_layer(4, sample_axes(1, rng));
    TfimSpec spec{4, 1.0, 1.0, 6};
    ReservoirUnitary res = tfim_as_reservoir(spec, sample_couplings(spec), 3.0);
    std::vector<double> grid = uniform_grid(kDefaultGridPoints);
    EXPECT_EQ(RecEvaluator(enc, grid).eigentasks(res).rank, 2);
    EXPECT_EQ(RecEvaluator(enc, grid, random_product_state(4, rng)).eigentasks(res).rank, 3);
}
