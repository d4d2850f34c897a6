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

#include "qrcx/channels.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qrcx {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kDriftWarn = 1e-9;

std::atomic<std::uint64_t> g_corrections{0};
std::atomic<double> g_max_correction{0.0};

void record_correction(double delta) {
    g_corrections.fetch_add(1, std::memory_order_relaxed);
    double prev = g_max_correction.load(std::memory_order_relaxed);
    while (delta > prev && !g_max_correction.compare_exchange_weak(prev, delta, std::memory_order_relaxed)) {
    }
    if (delta > kDriftWarn) {
        std::clog << "qrcx: renormalized trace drift of " << delta << " after channel\n";
    }
}

// Every channel output passes through here: Hermitian part, unit trace.
DensityMatrix settle(int n_qubits, CMatrix m) {
    CMatrix h = (m + m.adjoint()) * 0.5;
    double tr = h.trace().real();
    double delta = std::abs(tr - 1.0);
    if (delta > 0.0) {
        record_correction(delta);
        if (tr > 0.0) {
            h /= tr;
        }
    }
    return DensityMatrix(n_qubits, std::move(h));
}

void check_unitary(const CMatrix& u, std::size_t dim) {
    if (static_cast<std::size_t>(u.rows()) != dim || static_cast<std::size_t>(u.cols()) != dim) {
        throw std::invalid_argument("apply_unitary: dimension mismatch");
    }
    const auto d = static_cast<Eigen::Index>(dim);
    double err = (u.adjoint() * u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (!(err < kUnitaryTol)) {
        throw std::invalid_argument("apply_unitary: operator is not unitary (error " + std::to_string(err) + ")");
    }
}

}  // namespace

RotationAxis::RotationAxis(double x, double y, double z) {
    double norm = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(norm) || norm == 0.0) {
        throw std::invalid_argument("RotationAxis: zero or non-finite direction");
    }
    nx_ = x / norm;
    ny_ = y / norm;
    nz_ = z / norm;
    alpha_ = (nx_ == 0.0 && ny_ == 0.0) ? 0.0 : std::atan2(ny_, nx_);
    if (alpha_ == -std::numbers::pi) {
        alpha_ = std::numbers::pi;
    }
    beta_ = std::acos(std::clamp(nz_, -1.0, 1.0));
}

RotationAxis RotationAxis::sample(Rng& rng) {
    double x = rng.normal();
    double y = rng.normal();
    double z = rng.normal();
    return RotationAxis(x, y, z);
}

CMatrix RotationAxis::generator() const {
    return 0.5 * (nx_ * pauli(PauliAxis::X) + ny_ * pauli(PauliAxis::Y) + nz_ * pauli(PauliAxis::Z));
}

double DephasingParams::decay() const {
    if (gamma < 0.0 || !(dt > 0.0)) {
        throw std::invalid_argument("DephasingParams: need gamma >= 0 and dt > 0");
    }
    return std::exp(-2.0 * gamma * dt);
}

CMatrix rx(double theta) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    CMatrix m(2, 2);
    m << c, Complex(0, -s), Complex(0, -s), c;
    return m;
}

CMatrix ry(double theta) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    CMatrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

CMatrix rz(double theta) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = std::polar(1.0, -theta / 2);
    m(1, 1) = std::polar(1.0, theta / 2);
    return m;
}

CMatrix rotation_gate(const RotationAxis& axis, double u) {
    const double a = axis.alpha(), b = axis.beta();
    return rz(a) * ry(b) * rz(u) * ry(-b) * rz(-a);
}

CMatrix rotation_gate_direct(const RotationAxis& axis, double u) { return expm_i(axis.generator(), u); }

DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& u) {
    check_unitary(u, rho.dim());
    return settle(rho.n_qubits(), u * rho.matrix() * u.adjoint());
}

CVector encoding_state(double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::invalid_argument("encoding_state: input " + std::to_string(u) + " outside [0, 1]");
    }
    CVector psi(2);
    psi << std::sqrt(1.0 - u), std::sqrt(u);
    return psi;
}

DensityMatrix reset_encode(const DensityMatrix& rho, double u, int qubit) {
    CVector psi = encoding_state(u);
    const int n = rho.n_qubits();
    if (qubit < 0 || qubit >= n) {
        throw std::out_of_range("reset_encode: qubit index outside register");
    }
    if (n == 1) {
        return DensityMatrix(1, psi * psi.adjoint());
    }
    CMatrix rest = partial_trace(rho.matrix(), qubit, n);
    const std::size_t shift = qubit_shift(qubit, n);
    const std::size_t low_mask = (std::size_t{1} << shift) - 1;
    const std::size_t dim = rho.dim();
    CMatrix out(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t a = 0; a < dim; ++a) {
        std::size_t ra = ((a >> (shift + 1)) << shift) | (a & low_mask);
        Complex pa = psi((a >> shift) & 1U);
        for (std::size_t b = 0; b < dim; ++b) {
            std::size_t rb = ((b >> (shift + 1)) << shift) | (b & low_mask);
            out(a, b) = pa * std::conj(psi((b >> shift) & 1U)) * rest(ra, rb);
        }
    }
    return settle(n, std::move(out));
}

DensityMatrix dephase_qubit(const DensityMatrix& rho, const DephasingParams& p, int qubit) {
    const double e = p.decay();
    const int n = rho.n_qubits();
    if (qubit < 0 || qubit >= n) {
        throw std::out_of_range("dephase_qubit: qubit index outside register");
    }
    const std::size_t shift = qubit_shift(qubit, n);
    CMatrix out = rho.matrix();
    const std::size_t dim = rho.dim();
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = 0; b < dim; ++b) {
            if (((a ^ b) >> shift) & 1U) {
                out(a, b) *= e;
            }
        }
    }
    return settle(n, std::move(out));
}

DensityMatrix dephase_qubit_dense(const DensityMatrix& rho, const DephasingParams& p, int qubit) {
    const double e = p.decay();
    CMatrix z = pauli(PauliAxis::Z, qubit, rho.n_qubits());
    CMatrix out = 0.5 * (1.0 + e) * rho.matrix() + 0.5 * (1.0 - e) * (z * rho.matrix() * z);
    return settle(rho.n_qubits(), std::move(out));
}

double CptpReport::worst() const {
    return std::max({trace_error, hermiticity_error, positivity_violation});
}

CptpReport validate_cptp(const DensityMatrix& rho) {
    CptpReport r;
    const CMatrix& m = rho.matrix();
    r.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
    r.hermiticity_error = hermiticity_error(m);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver((m + m.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = solver.eigenvalues()(0);
    r.positivity_violation = std::max(0.0, -r.min_eigenvalue);
    return r;
}

DriftStats drift_stats() {
    return DriftStats{g_corrections.load(), g_max_correction.load()};
}

void reset_drift_stats() {
    g_corrections.store(0);
    g_max_correction.store(0.0);
}

}  // namespace qrcx
