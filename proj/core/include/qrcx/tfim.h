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

#include "qrcx/linalg.h"

namespace qrcx {

/// H = h sum_i sz_i + sum_{i<j} J_ij sx_i sx_j, all-to-all random couplings.
struct TfimSpec {
    int n_qubits = 3;
    double h_field = 1.0;
    double j0 = 1.0;  ///< spectral radius the couplings are scaled to
    std::uint64_t seed = 0;
};

struct CouplingMatrix {
    RMatrix j;  ///< symmetric, zero diagonal
    std::uint64_t seed = 0;
    double j0 = 0.0;

    int n_qubits() const { return static_cast<int>(j.rows()); }

    /// {"n_qubits", "seed", "j0", "j": row-major array}
    std::string to_json() const;
    static CouplingMatrix from_json(const std::string& text);
};

/// Upper triangle drawn uniform in [-1, 1] in row-major (i < j) order from
/// Rng(spec.seed), mirrored, then scaled to spectral radius j0.
CouplingMatrix sample_couplings(const TfimSpec& spec);

CMatrix hamiltonian(const TfimSpec& spec, const CouplingMatrix& j);

/// exp(-i H dt).
CMatrix propagator(const CMatrix& h, double dt);

}  // namespace qrcx
