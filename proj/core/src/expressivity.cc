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

#include "qrcx/expressivity.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace qrcx {

namespace {

// Given an orthonormal basis `v` (K x r) of the signal space and the matching
// scales s with G = v diag(s^2) v^T, whiten D and diagonalize.
// v spans range(G), s holds sqrt of its eigenvalues, null spans the rest.
// Moving r along null(G) leaves y = r^T x alone but changes r^T D r; take the
// least-noise representative (Schur complement of the null block of D).
EigentaskSet whiten_and_solve(const RMatrix& v, const RVector& s, const RMatrix& null, const RMatrix& d) {
    EigentaskSet es;
    es.rank = static_cast<int>(s.size());
    if (es.rank == 0) {
        es.beta_sq = RVector(0);
        es.coeffs = RMatrix::Zero(d.rows(), 0);
        return es;
    }
    RMatrix lift = v;
    if (null.cols() > 0) {
        RMatrix d22 = null.transpose() * d * null;
        d22 = 0.5 * (d22 + d22.transpose());
        Eigen::SelfAdjointEigenSolver<RMatrix> nsolver(d22);
        if (nsolver.info() != Eigen::Success) {
            throw std::runtime_error("eigentasks: eigensolver did not converge");
        }
        const RVector& mu = nsolver.eigenvalues();
        const double cut = kRankThreshold * std::max(d.diagonal().cwiseAbs().maxCoeff(), 1e-300);
        RVector inv = RVector::Zero(mu.size());
        for (Eigen::Index i = 0; i < mu.size(); ++i) {
            if (mu(i) > cut) {
                inv(i) = 1.0 / mu(i);
            }
        }
        RMatrix pinv = nsolver.eigenvectors() * inv.asDiagonal() * nsolver.eigenvectors().transpose();
        lift -= null * (pinv * (null.transpose() * d * v));
    }
    RMatrix w = lift * s.cwiseInverse().asDiagonal();
    RMatrix dw = w.transpose() * d * w;
    dw = 0.5 * (dw + dw.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(dw);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigentasks: eigensolver did not converge");
    }
    // D is PSD; negative values here are rounding.
    es.beta_sq = solver.eigenvalues().cwiseMax(0.0);
    es.coeffs = w * solver.eigenvectors();
    return es;
}

void check_moment_shapes(const RMatrix& g, const RMatrix& d) {
    if (g.rows() != g.cols() || d.rows() != d.cols() || g.rows() != d.rows()) {
        throw std::invalid_argument("eigentasks: G and D must be square and of equal dimension");
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> uniform_grid(int points, double lo, double hi) {
    if (points < 1) {
        throw std::invalid_argument("uniform_grid: need at least one point");
    }
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int j = 0; j < points; ++j) {
        grid[static_cast<std::size_t>(j)] = lo + (hi - lo) * static_cast<double>(j) / points;
    }
    return grid;
}

void FeatureTable::validate() const {
    if (static_cast<std::size_t>(x.cols()) != u_grid.size()) {
        throw std::invalid_argument("FeatureTable: column count does not match grid");
    }
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        double sum = x.col(j).sum();
        double low = x.col(j).minCoeff();
        if (std::abs(sum - 1.0) > 1e-10 || low < -1e-12) {
            throw InvariantViolation("feature column " + std::to_string(j) + " is not a probability vector (sum " +
                                     format_double(sum) + ", min " + format_double(low) + ")");
        }
    }
}

FeatureTable feature_table(const Circuit& encoding, const ReservoirUnitary& reservoir,
                           std::span<const double> params, std::span<const double> u_grid,
                           EncodingPlacement placement) {
    if (u_grid.empty()) {
        throw std::invalid_argument("feature_table: empty input grid");
    }
    FeatureTable ft;
    ft.u_grid.assign(u_grid.begin(), u_grid.end());
    if (placement == EncodingPlacement::Upfront) {
        if (reservoir.n_qubits() != encoding.n_qubits()) {
            throw std::invalid_argument("feature_table: reservoir size does not match encoding circuit");
        }
        CMatrix states = encoded_states(encoding, params, u_grid);
        ft.x = (reservoir.matrix() * states).cwiseAbs2();
    } else {
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << encoding.n_qubits());
        ft.x = RMatrix(dim, static_cast<Eigen::Index>(u_grid.size()));
        for (std::size_t j = 0; j < u_grid.size(); ++j) {
            ft.x.col(static_cast<Eigen::Index>(j)) =
                features_single_cycle(encoding, reservoir, params, u_grid[j], placement);
        }
    }
    ft.validate();
    return ft;
}

RMatrix second_moment(const FeatureTable& ft) {
    RMatrix g = ft.x * ft.x.transpose() / static_cast<double>(ft.grid_size());
    return 0.5 * (g + g.transpose());
}

RMatrix shot_noise_moment(const FeatureTable& ft) {
    RVector mean = ft.x.rowwise().mean();
    RMatrix d = -second_moment(ft);
    d.diagonal() += mean;
    return d;
}

EigentaskSet eigentasks(const RMatrix& g, const RMatrix& d) {
    check_moment_shapes(g, d);
    Eigen::SelfAdjointEigenSolver<RMatrix> solver(0.5 * (g + g.transpose()));
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigentasks: eigensolver did not converge");
    }
    const RVector& lambda = solver.eigenvalues();
    const Eigen::Index k = lambda.size();
    double top = k > 0 ? lambda(k - 1) : 0.0;
    std::vector<Eigen::Index> keep, drop;
    for (Eigen::Index i = k - 1; i >= 0; --i) {
        (top > 0.0 && lambda(i) > kRankThreshold * top ? keep : drop).push_back(i);
    }
    RMatrix v(k, static_cast<Eigen::Index>(keep.size()));
    RVector s(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        v.col(static_cast<Eigen::Index>(c)) = solver.eigenvectors().col(keep[c]);
        s(static_cast<Eigen::Index>(c)) = std::sqrt(lambda(keep[c]));
    }
    RMatrix null(k, static_cast<Eigen::Index>(drop.size()));
    for (std::size_t c = 0; c < drop.size(); ++c) {
        null.col(static_cast<Eigen::Index>(c)) = solver.eigenvectors().col(drop[c]);
    }
    return whiten_and_solve(v, s, null, d);
}

EigentaskSet eigentasks_from_samples(const RMatrix& samples, const RMatrix& d) {
    if (samples.rows() == 0 || samples.cols() != d.rows() || d.rows() != d.cols()) {
        throw std::invalid_argument("eigentasks: sample matrix and D dimensions disagree");
    }
    RMatrix a = samples / std::sqrt(static_cast<double>(samples.rows()));
    Eigen::JacobiSVD<RMatrix, Eigen::ColPivHouseholderQRPreconditioner> svd(a, Eigen::ComputeFullV);
    const RVector& sigma = svd.singularValues();
    Eigen::Index keep = 0;
    if (sigma.size() > 0 && sigma(0) > 0.0) {
        while (keep < sigma.size() && sigma(keep) > kRankThreshold * sigma(0)) {
            ++keep;
        }
    }
    const RMatrix& full = svd.matrixV();
    return whiten_and_solve(full.leftCols(keep), sigma.head(keep), full.rightCols(full.cols() - keep), d);
}

EigentaskSet eigentasks(const FeatureTable& ft) {
    return eigentasks_from_samples(ft.x.transpose(), shot_noise_moment(ft));
}

RMatrix EigentaskSet::evaluate(const FeatureTable& ft) const { return ft.x.transpose() * coeffs; }

double rec_infinite(const EigentaskSet& es) { return static_cast<double>(es.rank); }

double rec_finite(const EigentaskSet& es, double shots) {
    if (!(shots >= 1.0)) {
        throw std::invalid_argument("rec_finite: shot count must be at least 1");
    }
    if (std::isinf(shots)) {
        return rec_infinite(es);
    }
    double total = 0.0;
    for (Eigen::Index k = 0; k < es.beta_sq.size(); ++k) {
        total += 1.0 / (1.0 + es.beta_sq(k) / shots);
    }
    return total;
}

int rec_upper_bound(int r, int k) {
    if (r < 0 || k < 1) {
        throw std::invalid_argument("rec_upper_bound: need r >= 0 and k >= 1");
    }
    return std::min(2 * r + 1, k);
}

RVector sample_features(const RVector& p, std::int64_t shots, Rng& rng) {
    if (shots < 1) {
        throw std::invalid_argument("sample_features: shot count must be positive");
    }
    const Eigen::Index k = p.size();
    if (k == 0) {
        throw std::invalid_argument("sample_features: empty distribution");
    }
    std::vector<double> cdf(static_cast<std::size_t>(k));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) {
        acc += std::max(p(i), 0.0);
        cdf[static_cast<std::size_t>(i)] = acc;
    }
    if (!(acc > 0.0)) {
        throw std::invalid_argument("sample_features: distribution has no mass");
    }
    for (double& c : cdf) {
        c /= acc;
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
    for (std::int64_t s = 0; s < shots; ++s) {
        double u = rng.uniform();
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        auto idx = std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(k) - 1);
        ++counts[static_cast<std::size_t>(idx)];
    }
    RVector freq(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        freq(i) = static_cast<double>(counts[static_cast<std::size_t>(i)]) / static_cast<double>(shots);
    }
    return freq;
}

std::string RecReport::to_json() const {
    nlohmann::ordered_json out;
    out["rec_infinite"] = rec_infinite;
    nlohmann::ordered_json finite = nlohmann::ordered_json::array();
    for (const auto& [shots, value] : rec_finite) {
        nlohmann::ordered_json row;
        if (std::isinf(shots)) {
            row["shots"] = "inf";
        } else {
            row["shots"] = shots;
        }
        row["rec"] = value;
        finite.push_back(std::move(row));
    }
    out["rec_finite"] = std::move(finite);
    out["r_encode"] = r_encode;
    out["k_count"] = k_count;
    out["upper_bound"] = rec_upper_bound(r_encode, std::max(k_count, 1));
    out["metadata"] = metadata;
    return out.dump(2);
}

RecReport rec_empirical(const FeatureTable& ft, int r_encode, std::span<const double> shot_counts, int n_runs,
                        Rng& rng) {
    if (n_runs < 1) {
        throw std::invalid_argument("rec_empirical: need at least one run");
    }
    RecReport report;
    EigentaskSet analytic = eigentasks(ft);
    report.rec_infinite = rec_infinite(analytic);
    report.r_encode = r_encode;
    report.k_count = ft.k_count();
    report.metadata["estimator"] = "plug-in moments, S/(S-1) covariance correction";
    report.metadata["grid_points"] = std::to_string(ft.grid_size());
    report.metadata["n_runs"] = std::to_string(n_runs);
    report.metadata["rng_seed"] = std::to_string(rng.seed());

    const auto m = static_cast<double>(ft.grid_size());
    for (double shots : shot_counts) {
        if (std::isinf(shots)) {
            report.rec_finite[shots] = rec_finite(analytic, shots);
            continue;
        }
        if (!(shots >= 2.0) || shots != std::floor(shots)) {
            throw std::invalid_argument("rec_empirical: finite shot counts must be integers >= 2");
        }
        const auto s_int = static_cast<std::int64_t>(shots);
        double total = 0.0;
        for (int run = 0; run < n_runs; ++run) {
            RMatrix xbar(ft.x.rows(), ft.x.cols());
            for (Eigen::Index j = 0; j < ft.x.cols(); ++j) {
                xbar.col(j) = sample_features(ft.x.col(j), s_int, rng);
            }
            RMatrix raw = xbar * xbar.transpose() / m;
            RMatrix d_hat = -raw;
            d_hat.diagonal() += xbar.rowwise().mean();
            d_hat *= shots / (shots - 1.0);
            RMatrix g_hat = raw - d_hat / shots;
            total += rec_finite(eigentasks(g_hat, d_hat), shots);
        }
        report.rec_finite[shots] = total / n_runs;
    }
    return report;
}

FourierFitReport fourier_fit(std::span<const double> grid, const RMatrix& values, int degree) {
    if (degree < 0) {
        throw std::invalid_argument("fourier_fit: degree must be non-negative");
    }
    const auto m = static_cast<Eigen::Index>(grid.size());
    const Eigen::Index width = 2 * degree + 1;
    if (values.cols() != m) {
        throw std::invalid_argument("fourier_fit: value columns must match the grid");
    }
    if (m < width) {
        throw std::invalid_argument("fourier_fit: grid too small for the requested degree");
    }
    RMatrix basis(m, width);
    for (Eigen::Index j = 0; j < m; ++j) {
        double u = grid[static_cast<std::size_t>(j)];
        basis(j, 0) = 1.0;
        for (int f = 1; f <= degree; ++f) {
            basis(j, 2 * f - 1) = std::cos(f * u);
            basis(j, 2 * f) = std::sin(f * u);
        }
    }
    Eigen::ColPivHouseholderQR<RMatrix> qr(basis);
    RMatrix coef_t = qr.solve(values.transpose());  // width x K
    FourierFitReport report;
    report.degree = degree;
    report.coefficients = coef_t.transpose();
    RMatrix residual = values.transpose() - basis * coef_t;
    report.max_residual = residual.size() ? residual.cwiseAbs().maxCoeff() : 0.0;
    for (Eigen::Index c = 0; c < width; ++c) {
        if (coef_t.row(c).cwiseAbs().maxCoeff() > 1e-8) {
            ++report.active_components;
        }
    }
    return report;
}

FourierFitReport fourier_fit(const FeatureTable& ft, int degree) { return fourier_fit(ft.u_grid, ft.x, degree); }

RecEvaluator::RecEvaluator(const Circuit& encoding, std::vector<double> grid)
    : RecEvaluator(encoding, std::move(grid), CVector::Unit(static_cast<Eigen::Index>(std::size_t{1} << encoding.n_qubits()), 0)) {}

RecEvaluator::RecEvaluator(const Circuit& encoding, std::vector<double> grid, const CVector& initial)
    : n_qubits_(encoding.n_qubits()), r_encode_(encoding.n_encode()), grid_(std::move(grid)) {
    if (encoding.n_params() != 0) {
        throw std::invalid_argument("RecEvaluator: encoding circuit must not carry trainable parameters");
    }
    if (grid_.empty()) {
        throw std::invalid_argument("RecEvaluator: empty input grid");
    }
    states_ = encoded_states(encoding, {}, grid_, initial);
}

FeatureTable RecEvaluator::table(const ReservoirUnitary& reservoir) const {
    if (reservoir.n_qubits() != n_qubits_) {
        throw std::invalid_argument("RecEvaluator: reservoir size does not match encoding circuit");
    }
    FeatureTable ft;
    ft.u_grid = grid_;
    ft.x = (reservoir.matrix() * states_).cwiseAbs2();
    ft.validate();
    return ft;
}

EigentaskSet RecEvaluator::eigentasks(const ReservoirUnitary& reservoir) const {
    return qrcx::eigentasks(table(reservoir));
}

}  // namespace qrcx
