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

#include "qrcx/linalg.h"
#include "qrcx/rng.h"

namespace qrcx {

/// Unit rotation axis n with its spherical angles
///   alpha = atan2(n_y, n_x) in (-pi, pi], beta = arccos(n_z) in [0, pi].
/// atan2(0, 0) is taken as 0 for the poles.
class RotationAxis {
  public:
    /// Normalizes (x, y, z); throws std::invalid_argument on a zero or non-finite vector.
    RotationAxis(double x, double y, double z);

    static RotationAxis x() { return {1.0, 0.0, 0.0}; }
    static RotationAxis y() { return {0.0, 1.0, 0.0}; }
    static RotationAxis z() { return {0.0, 0.0, 1.0}; }

    /// Uniform on the sphere: three standard normals, normalized.
    static RotationAxis sample(Rng& rng);

    double nx() const { return nx_; }
    double ny() const { return ny_; }
    double nz() const { return nz_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    /// Encoding generator G = (n_x sx + n_y sy + n_z sz) / 2.
    CMatrix generator() const;

    bool operator==(const RotationAxis&) const = default;

  private:
    double nx_, ny_, nz_;
    double alpha_, beta_;
};

struct DephasingParams {
    double gamma = 0.0;  ///< rate, 1/time
    double dt = 1.0;     ///< duration of one application

    /// Coherence decay factor exp(-2 gamma dt).
    double decay() const;
};

/// Single-qubit rotations, exp(-i theta sigma / 2).
CMatrix rx(double theta);
CMatrix ry(double theta);
CMatrix rz(double theta);

/// R_n(u) = exp(-i u G) assembled as Rz(alpha) Ry(beta) Rz(u) Ry(-beta) Rz(-alpha).
CMatrix rotation_gate(const RotationAxis& axis, double u);

/// R_n(u) from the spectral exponential of G; must agree with rotation_gate.
CMatrix rotation_gate_direct(const RotationAxis& axis, double u);

/// rho -> U rho U^dagger. Throws std::invalid_argument if U is not unitary within 1e-10.
DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& u);

/// sqrt(1 - u)|0> + sqrt(u)|1>.
CVector encoding_state(double u);

/// rho -> |psi_u><psi_u| (at `qubit`) x Tr_qubit[rho]. u must lie in [0, 1].
DensityMatrix reset_encode(const DensityMatrix& rho, double u, int qubit);

/// Pure dephasing of one qubit:
///   rho -> (1 + e)/2 rho + (1 - e)/2 sz rho sz,   e = exp(-2 gamma dt).
/// Applied entrywise: coherences across the qubit's two levels scale by e.
DensityMatrix dephase_qubit(const DensityMatrix& rho, const DephasingParams& p, int qubit);

/// Same channel evaluated literally with the embedded sigma_z matrix.
DensityMatrix dephase_qubit_dense(const DensityMatrix& rho, const DephasingParams& p, int qubit);

/// Violation magnitudes of the density-matrix invariants.
struct CptpReport {
    double trace_error = 0.0;        ///< |Tr rho - 1|
    double hermiticity_error = 0.0;  ///< max |rho - rho^dagger|
    double min_eigenvalue = 0.0;
    double positivity_violation = 0.0;  ///< max(0, -min_eigenvalue)

    static constexpr double kTraceTol = 1e-12;
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kPositivityTol = 1e-10;

    bool ok() const {
        return trace_error <= kTraceTol && hermiticity_error <= kHermitianTol &&
               positivity_violation <= kPositivityTol;
    }
    double worst() const;
};

CptpReport validate_cptp(const DensityMatrix& rho);

/// Counters for the re-symmetrize / renormalize step every channel ends with.
struct DriftStats {
    std::uint64_t corrections = 0;
    double max_trace_correction = 0.0;
};

DriftStats drift_stats();
void reset_drift_stats();

/// Raised when a run detects a state that violates the density-matrix or
/// probability invariants beyond tolerance.
class InvariantViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qrcx
