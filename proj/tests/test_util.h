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

#include "qrcx/linalg.h"
#include "qrcx/rng.h"

namespace qrcx::testing {

inline CMatrix random_complex(int rows, int cols, Rng& rng) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    return m;
}

inline CMatrix random_hermitian(int dim, Rng& rng) {
    CMatrix a = random_complex(dim, dim, rng);
    return 0.5 * (a + a.adjoint());
}

/// Haar-ish unitary from the QR of a complex Gaussian matrix.
inline CMatrix random_unitary(int dim, Rng& rng) {
    CMatrix a = random_complex(dim, dim, rng);
    Eigen::HouseholderQR<CMatrix> qr(a);
    CMatrix q = qr.householderQ();
    return q;
}

/// Random full-rank mixed state: A A^dagger / Tr.
inline DensityMatrix random_density(int n_qubits, Rng& rng) {
    int dim = 1 << n_qubits;
    CMatrix a = random_complex(dim, dim, rng);
    CMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(n_qubits, rho);
}

inline double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

}  // namespace qrcx::testing
