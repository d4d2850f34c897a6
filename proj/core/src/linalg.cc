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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qrcx {

namespace {

void check_register(int qubit, int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::out_of_range("qubit count " + std::to_string(n_qubits) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
    }
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " outside register of " +
                                std::to_string(n_qubits));
    }
}

std::size_t register_dim(int n_qubits) { return std::size_t{1} << n_qubits; }

}  // namespace

CMatrix pauli(PauliAxis s) {
    CMatrix m = CMatrix::Zero(2, 2);
    switch (s) {
        case PauliAxis::X:
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case PauliAxis::Y:
            m(0, 1) = Complex(0.0, -1.0);
            m(1, 0) = Complex(0.0, 1.0);
            break;
        case PauliAxis::Z:
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
    }
    return m;
}

CMatrix pauli(PauliAxis s, int qubit, int n_qubits) {
    return embed_single(pauli(s), qubit, n_qubits);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

CMatrix embed_single(const CMatrix& op, int qubit, int n_qubits) {
    check_register(qubit, n_qubits);
    if (op.rows() != 2 || op.cols() != 2) {
        throw std::invalid_argument("embed_single expects a 2x2 operator");
    }
    CMatrix out = CMatrix::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) {
        out = kron(out, q == qubit ? op : CMatrix::Identity(2, 2));
    }
    return out;
}

double hermiticity_error(const CMatrix& h) {
    if (h.rows() != h.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

CMatrix HermitianEig::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

HermitianEig herm_eig(const CMatrix& h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw std::invalid_argument("herm_eig expects a non-empty square matrix");
    }
    if (!h.allFinite()) {
        throw std::invalid_argument("herm_eig: matrix has non-finite entries");
    }
    double err = hermiticity_error(h);
    if (err >= kHermitianTol) {
        throw std::invalid_argument("herm_eig: matrix is not Hermitian (error " + std::to_string(err) + ")");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("herm_eig: eigensolver did not converge");
    }
    return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix expm_i(const CMatrix& h, double t) {
    HermitianEig eig = herm_eig(h);
    CVector phases(eig.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases(k) = std::polar(1.0, -eig.eigenvalues(k) * t);
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

double spectral_radius(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("spectral_radius expects a non-empty square matrix");
    }
    if (hermiticity_error(m) < kHermitianTol) {
        return herm_eig(m).eigenvalues.cwiseAbs().maxCoeff();
    }
    Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const RMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("spectral_radius expects a non-empty square matrix");
    }
    if ((m - m.transpose()).cwiseAbs().maxCoeff() < kHermitianTol) {
        Eigen::SelfAdjointEigenSolver<RMatrix> solver(m, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::EigenSolver<RMatrix> solver(m, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

CMatrix partial_trace(const CMatrix& m, int qubit, int n_qubits) {
    check_register(qubit, n_qubits);
    const std::size_t dim = register_dim(n_qubits);
    if (static_cast<std::size_t>(m.rows()) != dim || static_cast<std::size_t>(m.cols()) != dim) {
        throw std::invalid_argument("partial_trace: matrix does not match register size");
    }
    const std::size_t shift = qubit_shift(qubit, n_qubits);
    const std::size_t low_mask = (std::size_t{1} << shift) - 1;
    const std::size_t half = dim / 2;
    // Reduced index r maps to full indices with the traced bit inserted at `shift`.
    auto expand = [&](std::size_t r, std::size_t bit) {
        return ((r & ~low_mask) << 1) | (bit << shift) | (r & low_mask);
    };
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(half), static_cast<Eigen::Index>(half));
    for (std::size_t a = 0; a < half; ++a) {
        for (std::size_t b = 0; b < half; ++b) {
            out(a, b) = m(expand(a, 0), expand(b, 0)) + m(expand(a, 1), expand(b, 1));
        }
    }
    return out;
}

DensityMatrix::DensityMatrix(int n_qubits, CMatrix mat) : n_qubits_(n_qubits), mat_(std::move(mat)) {
    if (n_qubits < 0 || n_qubits > kMaxQubits) {
        throw std::out_of_range("DensityMatrix: qubit count out of range");
    }
    const auto dim = static_cast<Eigen::Index>(register_dim(n_qubits));
    if (mat_.rows() != dim || mat_.cols() != dim) {
        throw std::invalid_argument("DensityMatrix: expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                                    " matrix");
    }
    if (!mat_.allFinite()) {
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    }
}

DensityMatrix DensityMatrix::basis_state(int n_qubits, std::size_t index) {
    const std::size_t dim = register_dim(n_qubits);
    if (index >= dim) {
        throw std::out_of_range("basis_state: index outside register");
    }
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m(index, index) = 1.0;
    return DensityMatrix(n_qubits, std::move(m));
}

DensityMatrix DensityMatrix::pure(int n_qubits, const CVector& psi) {
    double norm = psi.norm();
    if (norm == 0.0) {
        throw std::invalid_argument("pure: zero state vector");
    }
    CVector v = psi / norm;
    return DensityMatrix(n_qubits, v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    const auto dim = static_cast<Eigen::Index>(register_dim(n_qubits));
    return DensityMatrix(n_qubits, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::trace() const { return mat_.trace().real(); }

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

double DensityMatrix::expectation(const CMatrix& op) const { return (mat_ * op).trace().real(); }

double DensityMatrix::sigma_z(int qubit) const {
    check_register(qubit, n_qubits_);
    const std::size_t shift = qubit_shift(qubit, n_qubits_);
    double acc = 0.0;
    for (std::size_t k = 0; k < dim(); ++k) {
        double p = mat_(k, k).real();
        acc += ((k >> shift) & 1U) ? -p : p;
    }
    return acc;
}

RVector DensityMatrix::probabilities() const { return mat_.diagonal().real(); }

DensityMatrix partial_trace(const DensityMatrix& rho, int qubit) {
    if (rho.n_qubits() < 2) {
        throw std::invalid_argument("partial_trace: need at least two qubits");
    }
    return DensityMatrix(rho.n_qubits() - 1, partial_trace(rho.matrix(), qubit, rho.n_qubits()));
}

}  // namespace qrcx
