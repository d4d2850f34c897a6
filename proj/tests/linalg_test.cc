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

#include "qrcx/linalg.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace qrcx;
using namespace qrcx::testing;

namespace {

// Power iteration on a symmetric matrix; independent of any eigensolver.
double power_iteration_radius(const RMatrix& m, int iters = 20000) {
    RVector v = RVector::Ones(m.rows());
    v(0) = 0.7;  // avoid starting orthogonal to the dominant vector by symmetry
    v.normalize();
    double lambda = 0.0;
    for (int i = 0; i < iters; ++i) {
        // Iterate on m^2 so +/- dominant eigenvalues of equal size don't oscillate.
        RVector w = m * (m * v);
        lambda = std::sqrt(w.norm());
        v = w / w.norm();
    }
    return lambda;
}

CMatrix taylor_expm_i(const CMatrix& h, double t, int terms) {
    CMatrix x = Complex(0.0, -t) * h;
    CMatrix term = identity(static_cast<int>(h.rows()));
    CMatrix sum = term;
    for (int k = 1; k < terms; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

// Tr_q M = sum_m (I x <m| x I) M (I x |m> x I), built from Kronecker products.
CMatrix partial_trace_oracle(const CMatrix& m, int qubit, int n) {
    CMatrix out = CMatrix::Zero(m.rows() / 2, m.cols() / 2);
    for (int b = 0; b < 2; ++b) {
        CMatrix ket = CMatrix::Zero(2, 1);
        ket(b, 0) = 1.0;
        CMatrix left = CMatrix::Identity(1, 1);
        for (int q = 0; q < n; ++q) {
            left = kron(left, q == qubit ? CMatrix(ket) : identity(2));
        }
        out += left.adjoint() * m * left;
    }
    return out;
}

}  // namespace

TEST(pauli, single_qubit_z) {
    CMatrix z = pauli(PauliAxis::Z, 0, 1);
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    EXPECT_EQ(z, expected);
}

TEST(pauli, kronecker_placement) {
    EXPECT_EQ(pauli(PauliAxis::X, 1, 2), kron(identity(2), pauli(PauliAxis::X)));
    EXPECT_EQ(pauli(PauliAxis::X, 0, 2), kron(pauli(PauliAxis::X), identity(2)));
}

TEST(pauli, involutory) {
    CMatrix y = pauli(PauliAxis::Y, 0, 3);
    EXPECT_LT(max_abs(y * y - identity(8)), 1e-15);
    EXPECT_LT(hermiticity_error(y), 1e-15);
}

TEST(pauli, algebra) {
    for (int n : {1, 2, 3}) {
        for (int q = 0; q < n; ++q) {
            CMatrix x = pauli(PauliAxis::X, q, n), y = pauli(PauliAxis::Y, q, n), z = pauli(PauliAxis::Z, q, n);
            EXPECT_LT(max_abs(x * y - Complex(0, 1) * z), 1e-14);
            for (int p = 0; p < n; ++p) {
                if (p == q) {
                    continue;
                }
                CMatrix xp = pauli(PauliAxis::X, p, n);
                EXPECT_LT(max_abs(xp * y - y * xp), 1e-14);
            }
        }
    }
}

TEST(pauli, index_out_of_range) {
    EXPECT_THROW(pauli(PauliAxis::X, 2, 2), std::out_of_range);
    EXPECT_THROW(pauli(PauliAxis::X, -1, 2), std::out_of_range);
}

TEST(kron, identities_and_z) {
    EXPECT_EQ(kron(identity(2), identity(2)), identity(4));
    CMatrix zz = kron(pauli(PauliAxis::Z), pauli(PauliAxis::Z));
    CMatrix expected = CMatrix::Zero(4, 4);
    expected.diagonal() << 1.0, -1.0, -1.0, 1.0;
    EXPECT_EQ(zz, expected);
}

TEST(kron, trace_factorizes) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix a = random_complex(2, 2, rng), b = random_complex(2, 2, rng);
        EXPECT_LT(std::abs(kron(a, b).trace() - a.trace() * b.trace()), 1e-12);
    }
}

TEST(herm_eig, pauli_spectra) {
    HermitianEig z = herm_eig(pauli(PauliAxis::Z));
    EXPECT_NEAR(z.eigenvalues(0), -1.0, 1e-15);
    EXPECT_NEAR(z.eigenvalues(1), 1.0, 1e-15);

    HermitianEig x = herm_eig(pauli(PauliAxis::X));
    EXPECT_NEAR(x.eigenvalues(0), -1.0, 1e-15);
    EXPECT_NEAR(x.eigenvalues(1), 1.0, 1e-15);
    // Eigenvectors up to phase: |<v|minus>| = 1.
    CVector minus(2), plus(2);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(x.eigenvectors.col(0).dot(minus)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(x.eigenvectors.col(1).dot(plus)), 1.0, 1e-14);
}

TEST(herm_eig, random_reconstruction) {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix h = random_hermitian(8, rng);
        HermitianEig eig = herm_eig(h);
        EXPECT_LT(max_abs(eig.reconstruct() - h), 1e-10 * max_abs(h));
        EXPECT_LT(max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors - identity(8)), 1e-10);
        for (int k = 1; k < 8; ++k) {
            EXPECT_LE(eig.eigenvalues(k - 1), eig.eigenvalues(k));
        }
    }
}

TEST(herm_eig, rejects_non_hermitian) {
    CMatrix m = pauli(PauliAxis::X);
    m(0, 1) = 2.0;
    EXPECT_THROW(herm_eig(m), std::invalid_argument);
    EXPECT_THROW(herm_eig(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST(expm_i, closed_forms) {
    EXPECT_LT(max_abs(expm_i(pauli(PauliAxis::Z), std::numbers::pi) + identity(2)), 1e-15);
    Rng rng(5);
    CMatrix h = random_hermitian(4, rng);
    EXPECT_LT(max_abs(expm_i(h, 0.0) - identity(4)), 1e-14);
}

TEST(expm_i, matches_taylor_series) {
    Rng rng(7);
    CMatrix h = random_hermitian(4, rng);
    h /= h.norm();  // keep |h t| small enough for 30 terms to converge to 1e-16
    EXPECT_LT(max_abs(expm_i(h, 0.7) - taylor_expm_i(h, 0.7, 30)), 1e-10);
}

TEST(expm_i, unitary_and_group_inverse) {
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        CMatrix h = random_hermitian(8, rng);
        double t = rng.uniform(-3.0, 3.0);
        CMatrix u = expm_i(h, t);
        EXPECT_LT(max_abs(u.adjoint() * u - identity(8)), 1e-12);
        EXPECT_LT(max_abs(u * expm_i(h, -t) - identity(8)), 1e-12);
    }
}

TEST(partial_trace, product_state) {
    Rng rng(13);
    DensityMatrix rho_b = random_density(2, rng);
    DensityMatrix full(3, kron(DensityMatrix::basis_state(1, 0).matrix(), rho_b.matrix()));
    EXPECT_LT(max_abs(partial_trace(full, 0).matrix() - rho_b.matrix()), 1e-15);
}

TEST(partial_trace, bell_state_is_maximally_mixed) {
    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    DensityMatrix rho = DensityMatrix::pure(2, bell);
    EXPECT_LT(max_abs(partial_trace(rho, 0).matrix() - identity(2) / 2.0), 1e-15);
    EXPECT_LT(max_abs(partial_trace(rho, 1).matrix() - identity(2) / 2.0), 1e-15);
}

TEST(partial_trace, trace_preserved_and_matches_oracle) {
    Rng rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        DensityMatrix rho = random_density(3, rng);
        for (int q = 0; q < 3; ++q) {
            DensityMatrix red = partial_trace(rho, q);
            EXPECT_NEAR(red.trace(), 1.0, 1e-12);
            EXPECT_LT(max_abs(red.matrix() - partial_trace_oracle(rho.matrix(), q, 3)), 1e-14);
        }
    }
}

TEST(partial_trace, linear_on_arbitrary_matrices) {
    Rng rng(19);
    CMatrix a = random_complex(8, 8, rng), b = random_complex(8, 8, rng);
    Complex alpha(0.3, -1.2);
    CMatrix lhs = partial_trace(a + alpha * b, 1, 3);
    CMatrix rhs = partial_trace(a, 1, 3) + alpha * partial_trace(b, 1, 3);
    EXPECT_LT(max_abs(lhs - rhs), 1e-13);
    EXPECT_LT(std::abs(partial_trace(a, 2, 3).trace() - a.trace()), 1e-12);
}

TEST(spectral_radius, simple) {
    EXPECT_NEAR(spectral_radius(pauli(PauliAxis::Z)), 1.0, 1e-15);
    EXPECT_NEAR(spectral_radius(CMatrix(2.0 * identity(4))), 2.0, 1e-15);
}

TEST(spectral_radius, matches_power_iteration) {
    Rng rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        RMatrix m(4, 4);
        for (int i = 0; i < 4; ++i) {
            for (int j = i; j < 4; ++j) {
                m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
            }
        }
        EXPECT_NEAR(spectral_radius(m), power_iteration_radius(m), 1e-8);
    }
}

TEST(density_matrix, shape_checked) {
    EXPECT_THROW(DensityMatrix(2, CMatrix::Identity(2, 2)), std::invalid_argument);
    CMatrix bad = identity(2);
    bad(0, 0) = std::nan("");
    EXPECT_THROW(DensityMatrix(1, bad), std::invalid_argument);
}

TEST(rng, uniform_and_normal_are_reproducible) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.uniform(), b.uniform());
        EXPECT_EQ(a.normal(), b.normal());
    }
    // mt19937_64's 10000th output is fixed by the standard.
    std::mt19937_64 ref;
    ref.discard(9999);
    EXPECT_EQ(ref(), 9981545732273789042ULL);
}

TEST(rng, derived_seeds_differ) {
    EXPECT_NE(derive_seed(1, {0}), derive_seed(1, {1}));
    EXPECT_NE(derive_seed(1, {0}), derive_seed(2, {0}));
    EXPECT_EQ(derive_seed(1, {3, 4}), derive_seed(1, {3, 4}));
}
