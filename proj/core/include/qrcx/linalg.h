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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qrcx {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Dense storage caps the register at 2^10 amplitudes per side.
inline constexpr int kMaxQubits = 10;

/// Tolerance on max |h - h^dagger| accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

// Register convention used everywhere in qrcx: qubit 0 is the leftmost
// tensor factor, i.e. the most significant bit of a computational basis
// index. For n qubits, qubit q lives at bit (n - 1 - q).
inline constexpr std::size_t qubit_shift(int qubit, int n_qubits) {
    return static_cast<std::size_t>(n_qubits - 1 - qubit);
}

enum class PauliAxis { X, Y, Z };

/// 2x2 Pauli matrix.
CMatrix pauli(PauliAxis s);

/// I x ... x sigma_s x ... x I with sigma_s on `qubit`. Throws std::out_of_range.
CMatrix pauli(PauliAxis s, int qubit, int n_qubits);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Places a 2x2 operator on `qubit` of an n-qubit register.
CMatrix embed_single(const CMatrix& op, int qubit, int n_qubits);

/// max |h_ij - conj(h_ji)|; infinity for non-square input.
double hermiticity_error(const CMatrix& h);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvectors stored as orthonormal columns.
struct HermitianEig {
    RVector eigenvalues;
    CMatrix eigenvectors;

    CMatrix reconstruct() const;
};

/// Throws std::invalid_argument for non-square, non-finite, or non-Hermitian input.
HermitianEig herm_eig(const CMatrix& h);

/// exp(-i h t) for Hermitian h, built from the spectral decomposition.
CMatrix expm_i(const CMatrix& h, double t);

/// max |eigenvalue|. Hermitian inputs go through herm_eig; anything else
/// through a general complex eigensolver.
double spectral_radius(const CMatrix& m);
double spectral_radius(const RMatrix& m);

/// Trace over one qubit of a 2^n x 2^n operator. Linear in `m`.
CMatrix partial_trace(const CMatrix& m, int qubit, int n_qubits);

/// A state on `n_qubits` qubits. Construction only checks shape and
/// finiteness; the physical invariants are checked by validate_cptp so that
/// slightly broken states can still be inspected.
class DensityMatrix {
  public:
    DensityMatrix(int n_qubits, CMatrix mat);

    static DensityMatrix basis_state(int n_qubits, std::size_t index);
    static DensityMatrix pure(int n_qubits, const CVector& psi);
    static DensityMatrix maximally_mixed(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
    const CMatrix& matrix() const { return mat_; }

    double trace() const;
    double purity() const;
    /// Re Tr[rho * op].
    double expectation(const CMatrix& op) const;
    /// <sigma_z> on one qubit, read off the diagonal.
    double sigma_z(int qubit) const;
    /// Diagonal of rho clipped to be real: the computational-basis POVM.
    RVector probabilities() const;

  private:
    int n_qubits_;
    CMatrix mat_;
};

DensityMatrix partial_trace(const DensityMatrix& rho, int qubit);

}  // namespace qrcx
