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

#include "qrcx/tfim.h"

#include <cmath>

#include "gtest/gtest.h"

#include "qrcx/channels.h"
#include "test_util.h"

using namespace qrcx;
using namespace qrcx::testing;

TEST(sample_couplings, two_qubits_rescaled_exactly) {
    CouplingMatrix j = sample_couplings({2, 1.0, 0.7, 99});
    EXPECT_NEAR(std::abs(j.j(0, 1)), 0.7, 1e-15);
    EXPECT_EQ(j.j(0, 1), j.j(1, 0));
    EXPECT_EQ(j.j(0, 0), 0.0);
}

TEST(sample_couplings, deterministic_per_seed) {
    CouplingMatrix a = sample_couplings({4, 1.0, 1.0, 5});
    CouplingMatrix b = sample_couplings({4, 1.0, 1.0, 5});
    CouplingMatrix c = sample_couplings({4, 1.0, 1.0, 6});
    EXPECT_EQ(a.j, b.j);
    EXPECT_NE(a.j, c.j);
}

TEST(sample_couplings, spectral_radius_matches_j0) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CouplingMatrix j = sample_couplings({4, 1.0, 1.3, seed});
        Eigen::SelfAdjointEigenSolver<RMatrix> solver(j.j);
        EXPECT_NEAR(solver.eigenvalues().cwiseAbs().maxCoeff(), 1.3, 1e-10);
        EXPECT_EQ(j.j, j.j.transpose());
        EXPECT_EQ(j.j.diagonal().cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(sample_couplings, draw_order_is_row_major_upper_triangle) {
    TfimSpec spec{3, 1.0, 1.0, 1234};
    Rng rng(spec.seed);
    RMatrix raw = RMatrix::Zero(3, 3);
    raw(0, 1) = raw(1, 0) = rng.uniform(-1.0, 1.0);
    raw(0, 2) = raw(2, 0) = rng.uniform(-1.0, 1.0);
    raw(1, 2) = raw(2, 1) = rng.uniform(-1.0, 1.0);
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(raw);
    raw *= 1.0 / solver.eigenvalues().cwiseAbs().maxCoeff();
    EXPECT_LT((sample_couplings(spec).j - raw).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(sample_couplings, json_round_trip) {
    CouplingMatrix j = sample_couplings({4, 1.0, 1.0, 77});
    CouplingMatrix back = CouplingMatrix::from_json(j.to_json());
    EXPECT_EQ(back.j, j.j);
    EXPECT_EQ(back.seed, 77u);
    EXPECT_EQ(back.j0, 1.0);
    EXPECT_THROW(CouplingMatrix::from_json(R"({"n_qubits":2,"seed":1,"j0":1,"j":[0,1,1]})"), std::invalid_argument);
}

TEST(hamiltonian, single_qubit_is_field_only) {
    TfimSpec spec{1, 0.6, 1.0, 0};
    CMatrix h = hamiltonian(spec, sample_couplings(spec));
    EXPECT_LT(max_abs(h - 0.6 * pauli(PauliAxis::Z)), 1e-15);
}

TEST(hamiltonian, xx_coupling_spectrum) {
    TfimSpec spec{2, 0.0, 1.0, 0};
    CouplingMatrix j{RMatrix::Zero(2, 2), 0, 1.0};
    j.j(0, 1) = j.j(1, 0) = 1.0;
    HermitianEig eig = herm_eig(hamiltonian(spec, j));
    EXPECT_NEAR(eig.eigenvalues(0), -1.0, 1e-14);
    EXPECT_NEAR(eig.eigenvalues(1), -1.0, 1e-14);
    EXPECT_NEAR(eig.eigenvalues(2), 1.0, 1e-14);
    EXPECT_NEAR(eig.eigenvalues(3), 1.0, 1e-14);
}

TEST(hamiltonian, matches_pauli_sum_and_is_traceless) {
    TfimSpec spec{3, 0.8, 1.1, 3};
    CouplingMatrix j = sample_couplings(spec);
    CMatrix expected = CMatrix::Zero(8, 8);
    for (int i = 0; i < 3; ++i) {
        expected += spec.h_field * pauli(PauliAxis::Z, i, 3);
        for (int k = i + 1; k < 3; ++k) {
            expected += j.j(i, k) * pauli(PauliAxis::X, i, 3) * pauli(PauliAxis::X, k, 3);
        }
    }
    CMatrix h = hamiltonian(spec, j);
    EXPECT_LT(max_abs(h - expected), 1e-15);
    EXPECT_LT(std::abs(h.trace()), 1e-12);
    EXPECT_LT(hermiticity_error(h), 1e-15);
}

TEST(hamiltonian, commutes_with_z_parity) {
    TfimSpec spec{4, 0.7, 1.3, 5};
    CMatrix h = hamiltonian(spec, sample_couplings(spec));
    CMatrix parity = identity(16);
    for (int i = 0; i < 4; ++i) {
        parity = parity * pauli(PauliAxis::Z, i, 4);
    }
    EXPECT_LT(max_abs(h * parity - parity * h), 1e-14);
}

TEST(propagator, group_properties) {
    TfimSpec spec{3, 1.0, 1.0, 8};
    CMatrix h = hamiltonian(spec, sample_couplings(spec));
    EXPECT_LT(max_abs(propagator(h, 0.0) - identity(8)), 1e-14);
    EXPECT_LT(max_abs(propagator(h, 0.4) * propagator(h, -0.4) - identity(8)), 1e-12);
    EXPECT_LT(max_abs(propagator(h, 0.3 + 1.1) - propagator(h, 0.3) * propagator(h, 1.1)), 1e-11);
}

TEST(propagator, conserves_energy) {
    TfimSpec spec{3, 1.0, 1.0, 21};
    CMatrix h = hamiltonian(spec, sample_couplings(spec));
    Rng rng(4);
    DensityMatrix rho = random_density(3, rng);
    for (double dt : {0.1, 0.75, 3.0, 17.0}) {
        DensityMatrix evolved = apply_unitary(rho, propagator(h, dt));
        EXPECT_NEAR(evolved.expectation(h), rho.expectation(h), 1e-10);
    }
}
