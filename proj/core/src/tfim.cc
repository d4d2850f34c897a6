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

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qrcx/rng.h"

namespace qrcx {

using nlohmann::json;

CouplingMatrix sample_couplings(const TfimSpec& spec) {
    const int n = spec.n_qubits;
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("sample_couplings: qubit count out of range");
    }
    if (!(spec.j0 > 0.0)) {
        throw std::invalid_argument("sample_couplings: coupling strength j0 must be positive");
    }
    CouplingMatrix out;
    out.seed = spec.seed;
    out.j0 = spec.j0;
    out.j = RMatrix::Zero(n, n);
    if (n == 1) {
        return out;
    }
    Rng rng(spec.seed);
    double radius = 0.0;
    // An all-zero draw has probability zero; keep drawing from the same stream if it happens.
    while (radius == 0.0) {
        for (int i = 0; i < n; ++i) {
            for (int k = i + 1; k < n; ++k) {
                double v = rng.uniform(-1.0, 1.0);
                out.j(i, k) = v;
                out.j(k, i) = v;
            }
        }
        radius = spectral_radius(out.j);
    }
    out.j *= spec.j0 / radius;
    return out;
}

CMatrix hamiltonian(const TfimSpec& spec, const CouplingMatrix& j) {
    const int n = spec.n_qubits;
    if (j.n_qubits() != n) {
        throw std::invalid_argument("hamiltonian: coupling matrix does not match qubit count");
    }
    const auto dim = static_cast<std::size_t>(1) << n;
    CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t a = 0; a < dim; ++a) {
        double diag = 0.0;
        for (int q = 0; q < n; ++q) {
            diag += ((a >> qubit_shift(q, n)) & 1U) ? -spec.h_field : spec.h_field;
        }
        h(a, a) = diag;
        // sx_i sx_k flips both bits.
        for (int i = 0; i < n; ++i) {
            for (int k = i + 1; k < n; ++k) {
                std::size_t flipped = a ^ (std::size_t{1} << qubit_shift(i, n)) ^ (std::size_t{1} << qubit_shift(k, n));
                h(flipped, a) += j.j(i, k);
            }
        }
    }
    return h;
}

CMatrix propagator(const CMatrix& h, double dt) { return expm_i(h, dt); }

std::string CouplingMatrix::to_json() const {
    json out;
    out["n_qubits"] = n_qubits();
    out["seed"] = seed;
    out["j0"] = j0;
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(j.size()));
    for (Eigen::Index r = 0; r < j.rows(); ++r) {
        for (Eigen::Index c = 0; c < j.cols(); ++c) {
            flat.push_back(j(r, c));
        }
    }
    out["j"] = flat;
    return out.dump(2);
}

CouplingMatrix CouplingMatrix::from_json(const std::string& text) {
    json in = json::parse(text);
    CouplingMatrix out;
    int n = in.at("n_qubits").get<int>();
    out.seed = in.at("seed").get<std::uint64_t>();
    out.j0 = in.at("j0").get<double>();
    auto flat = in.at("j").get<std::vector<double>>();
    if (n < 1 || flat.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("CouplingMatrix::from_json: array size does not match n_qubits");
    }
    out.j = RMatrix(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            out.j(r, c) = flat[static_cast<std::size_t>(r * n + c)];
        }
    }
    return out;
}

}  // namespace qrcx
