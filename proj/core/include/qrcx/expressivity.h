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
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qrcx/circuits.h"
#include "qrcx/linalg.h"
#include "qrcx/reservoir.h"
#include "qrcx/rng.h"

namespace qrcx {

inline constexpr int kDefaultGridPoints = 200;

/// Relative cutoff on the singular values of the normalized feature matrix
/// (equivalently 1e-20 relative on the eigenvalues of G) below which a
/// direction counts as outside the signal space.
inline constexpr double kRankThreshold = 1e-10;

/// Infinite shot count, as accepted by rec_finite and rec_empirical.
inline constexpr double kInfiniteShots = std::numeric_limits<double>::infinity();

/// `points` inputs spaced uniformly over [lo, hi), hi excluded. The default
/// range is one full period of the encoding rotations.
std::vector<double> uniform_grid(int points, double lo = 0.0, double hi = 2.0 * std::numbers::pi);

/// Expected POVM outcomes x_k(u) on an input grid.
struct FeatureTable {
    std::vector<double> u_grid;
    RMatrix x;  ///< K x |grid|, column j is the outcome distribution at u_grid[j]

    int k_count() const { return static_cast<int>(x.rows()); }
    std::size_t grid_size() const { return u_grid.size(); }

    /// Throws InvariantViolation unless every column sums to 1 within 1e-10
    /// and has no entry below -1e-12.
    void validate() const;
};

FeatureTable feature_table(const Circuit& encoding, const ReservoirUnitary& reservoir,
                           std::span<const double> params, std::span<const double> u_grid,
                           EncodingPlacement placement = EncodingPlacement::Upfront);

/// G_jk = E_u[x_j(u) x_k(u)], uniform weight over the grid.
RMatrix second_moment(const FeatureTable& ft);

/// D = E_u[diag(x(u)) - x(u) x(u)^T], the mean single-shot categorical covariance.
RMatrix shot_noise_moment(const FeatureTable& ft);

/// Eigentasks y_k(u) = sum_j coeffs(j, k) x_j(u), orthonormal under E_u and
/// sorted by noise-to-signal ratio beta_k ascending.
struct EigentaskSet {
    RVector beta_sq;  ///< beta_k^2, ascending
    RMatrix coeffs;   ///< K x rank
    int rank = 0;

    RVector betas() const { return beta_sq.cwiseSqrt(); }
    /// |grid| x rank matrix of y_k(u_j).
    RMatrix evaluate(const FeatureTable& ft) const;
};

/// Generalized problem D r = beta^2 G r from the moment matrices: whiten by
/// the eigendecomposition of G restricted to eigenvalues above
/// kRankThreshold * max. Limited to the dynamic range of G itself.
EigentaskSet eigentasks(const RMatrix& g, const RMatrix& d);

/// Same problem, whitening through the thin SVD of samples / sqrt(M), where
/// samples is M x K (one row per input). Resolves signal directions whose
/// G-eigenvalue sits far below double precision relative to the largest.
EigentaskSet eigentasks_from_samples(const RMatrix& samples, const RMatrix& d);

/// eigentasks_from_samples on the table with D = shot_noise_moment(ft).
EigentaskSet eigentasks(const FeatureTable& ft);

/// Number of resolvable eigentasks; the S -> infinity limit of rec_finite.
double rec_infinite(const EigentaskSet& es);

/// C_T(S) = sum_k 1 / (1 + beta_k^2 / S). Accepts kInfiniteShots.
double rec_finite(const EigentaskSet& es, double shots);

/// min(2r + 1, k).
int rec_upper_bound(int r, int k);

/// Empirical outcome frequencies of `shots` categorical draws from p
/// (inverse-CDF sampling on Rng::uniform).
RVector sample_features(const RVector& p, std::int64_t shots, Rng& rng);

struct RecReport {
    double rec_infinite = 0.0;
    std::map<double, double> rec_finite;  ///< shots -> C_T(S)
    int r_encode = 0;
    int k_count = 0;
    std::map<std::string, std::string> metadata;

    std::string to_json() const;
};

/// Finite-shot REC from sampled tables. For each shot count S and each of
/// n_runs draws, every column of `ft` is replaced by sample_features(., S);
/// the moments are estimated as
///   D_hat = S/(S-1) E_u[diag(Xbar) - Xbar Xbar^T],  G_hat = E_u[Xbar Xbar^T] - D_hat / S
/// and reduced through eigentasks(G_hat, D_hat). The reported value is the
/// run average. S = kInfiniteShots reproduces the analytic pathway.
RecReport rec_empirical(const FeatureTable& ft, int r_encode, std::span<const double> shot_counts, int n_runs,
                        Rng& rng);

struct FourierFitReport {
    int degree = 0;
    double max_residual = 0.0;  ///< max |x_k(u) - fit_k(u)| over all k, u
    RMatrix coefficients;       ///< K x (2 degree + 1): [1, cos u, sin u, cos 2u, sin 2u, ...]
    int active_components = 0;  ///< basis columns with any |coefficient| > 1e-8
};

/// Least-squares fit of every feature row onto the real trigonometric basis
/// of the given degree.
FourierFitReport fourier_fit(const FeatureTable& ft, int degree);

/// Fourier fit of arbitrary sampled functions (rows of `values`) on `grid`.
FourierFitReport fourier_fit(std::span<const double> grid, const RMatrix& values, int degree);

/// Encoded states for a fixed encoding circuit and grid, reused across many
/// reservoirs (sweeps and the optimizer).
class RecEvaluator {
  public:
    RecEvaluator(const Circuit& encoding, std::vector<double> grid);
    /// Starts every cycle from `initial` instead of |0...0>.
    RecEvaluator(const Circuit& encoding, std::vector<double> grid, const CVector& initial);

    const std::vector<double>& grid() const { return grid_; }
    int r_encode() const { return r_encode_; }
    int n_qubits() const { return n_qubits_; }

    FeatureTable table(const ReservoirUnitary& reservoir) const;
    EigentaskSet eigentasks(const ReservoirUnitary& reservoir) const;

  private:
    int n_qubits_;
    int r_encode_;
    std::vector<double> grid_;
    CMatrix states_;
};

}  // namespace qrcx
