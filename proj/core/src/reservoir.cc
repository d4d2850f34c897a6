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

#include "qrcx/reservoir.h"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include "qrcx/rng.h"

namespace qrcx {

namespace {

constexpr double kRunDriftTol = 1e-8;

void check_inputs(std::span<const double> inputs) {
    for (double u : inputs) {
        if (!(u >= 0.0 && u <= 1.0)) {
            throw std::invalid_argument("input value " + std::to_string(u) + " outside [0, 1]");
        }
    }
}

void check_state(const RunConfig& cfg, const DensityMatrix& rho) {
    if (!cfg.check_invariants) {
        return;
    }
    CptpReport report = validate_cptp(rho);
    if (report.worst() > kRunDriftTol) {
        throw InvariantViolation("state left the density-matrix manifold (violation " +
                                 std::to_string(report.worst()) + ")");
    }
}

// Shared bookkeeping for both pipelines.
class TraceRecorder {
  public:
    TraceRecorder(const RunConfig& cfg, std::span<const double> inputs) : n_(cfg.n_qubits) {
        const std::size_t rows = static_cast<std::size_t>(cfg.warmup_substeps()) +
                                 inputs.size() * static_cast<std::size_t>(cfg.v_mux);
        trace_.sigma_z = RMatrix::Zero(static_cast<Eigen::Index>(rows), n_);
        trace_.times.reserve(rows);
        trace_.input_step.reserve(rows);
        trace_.inputs.assign(inputs.begin(), inputs.end());
    }

    template <class Reader>
    void record(double time, int step, Reader&& read) {
        auto row = static_cast<Eigen::Index>(trace_.times.size());
        trace_.times.push_back(time);
        trace_.input_step.push_back(step);
        for (int q = 0; q < n_; ++q) {
            trace_.sigma_z(row, q) = read(q);
        }
    }

    Trace take() { return std::move(trace_); }

  private:
    int n_;
    Trace trace_;
};

}  // namespace

std::string_view input_mode_name(InputMode mode) { return mode == InputMode::Reset ? "reset" : "rotations"; }

InputMode parse_input_mode(std::string_view name) {
    if (name == "reset") {
        return InputMode::Reset;
    }
    if (name == "rotations") {
        return InputMode::Rotations;
    }
    throw std::invalid_argument("unknown input mode '" + std::string(name) + "'");
}

int RunConfig::warmup_substeps() const {
    if (warmup_time <= 0.0) {
        return 0;
    }
    // The small slack keeps e.g. 20 / 0.75 from losing a step to rounding.
    return static_cast<int>(std::floor(warmup_time / substep() + 1e-9));
}

void RunConfig::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("RunConfig: qubit count out of range");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("RunConfig: dt must be positive");
    }
    if (v_mux < 1) {
        throw std::invalid_argument("RunConfig: v_mux must be at least 1");
    }
    if (gamma < 0.0) {
        throw std::invalid_argument("RunConfig: gamma must be non-negative");
    }
    if (encode_qubit < 0 || encode_qubit >= n_qubits) {
        throw std::invalid_argument("RunConfig: encode qubit outside register");
    }
}

double Trace::max_abs_sigma_z() const { return sigma_z.size() == 0 ? 0.0 : sigma_z.cwiseAbs().maxCoeff(); }

void Trace::write_csv(std::ostream& out) const {
    out << "time,input_step,qubit,sigma_z\n";
    char buf[96];
    for (std::size_t r = 0; r < times.size(); ++r) {
        for (Eigen::Index q = 0; q < sigma_z.cols(); ++q) {
            std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%.17g\n", times[r], input_step[r], static_cast<int>(q),
                          sigma_z(static_cast<Eigen::Index>(r), q));
            out << buf;
        }
    }
}

std::vector<RotationAxis> resolved_axes(const RunConfig& cfg) {
    if (!cfg.axes.empty()) {
        return cfg.axes;
    }
    Rng rng(derive_seed(cfg.seed, {0xA7E5}));
    return sample_axes(cfg.n_qubits, rng);
}

DensityMatrix initial_state(const RunConfig& cfg) {
    Rng rng(derive_seed(cfg.seed, {0x1717}));
    return DensityMatrix::pure(cfg.n_qubits, haar_state(cfg.n_qubits, rng));
}

Trace run_physical(const RunConfig& cfg, const TfimSpec& spec, std::span<const double> inputs) {
    cfg.validate();
    check_inputs(inputs);
    if (spec.n_qubits != cfg.n_qubits) {
        throw std::invalid_argument("run_physical: TFIM size does not match run configuration");
    }
    const int n = cfg.n_qubits;
    const double tau = cfg.substep();
    const CMatrix u_step = propagator(hamiltonian(spec, sample_couplings(spec)), tau);
    const CMatrix u_step_dag = u_step.adjoint();
    const DephasingParams dephasing{cfg.gamma, tau};

    std::vector<CMatrix> z_ops;
    for (int q = 0; q < n; ++q) {
        z_ops.push_back(pauli(PauliAxis::Z, q, n));
    }
    const std::vector<RotationAxis> axes =
        cfg.input_mode == InputMode::Rotations ? resolved_axes(cfg) : std::vector<RotationAxis>{};

    DensityMatrix rho = initial_state(cfg);
    TraceRecorder rec(cfg, inputs);
    double t = 0.0;

    auto evolve_and_read = [&](int step) {
        rho = DensityMatrix(n, u_step * rho.matrix() * u_step_dag);
        for (int q = 0; q < n; ++q) {
            rho = dephase_qubit_dense(rho, dephasing, q);
        }
        t += tau;
        check_state(cfg, rho);
        rec.record(t, step, [&](int q) { return rho.expectation(z_ops[static_cast<std::size_t>(q)]); });
    };

    for (int s = 0; s < cfg.warmup_substeps(); ++s) {
        evolve_and_read(-1);
    }
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const double u = inputs[k];
        if (cfg.input_mode == InputMode::Reset) {
            // Kraus form of the reset: K_m = |psi_u><m| on the encoded qubit.
            CVector psi = encoding_state(u);
            CMatrix acc = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
            for (int m = 0; m < 2; ++m) {
                CMatrix local = CMatrix::Zero(2, 2);
                local.col(m) = psi;
                CMatrix kraus = embed_single(local, cfg.encode_qubit, n);
                acc += kraus * rho.matrix() * kraus.adjoint();
            }
            rho = DensityMatrix(n, acc);
        } else {
            CMatrix r_total = CMatrix::Identity(rho.matrix().rows(), rho.matrix().cols());
            for (std::size_t i = 0; i < axes.size(); ++i) {
                int q = static_cast<int>(i % static_cast<std::size_t>(n));
                r_total = embed_single(rotation_gate_direct(axes[i], cfg.input_scale * u), q, n) * r_total;
            }
            rho = DensityMatrix(n, r_total * rho.matrix() * r_total.adjoint());
        }
        for (int v = 0; v < cfg.v_mux; ++v) {
            evolve_and_read(static_cast<int>(k));
        }
    }
    return rec.take();
}

Trace run_gate_model(const RunConfig& cfg, const ReservoirUnitary& substep_unitary, std::span<const double> inputs) {
    cfg.validate();
    check_inputs(inputs);
    if (substep_unitary.n_qubits() != cfg.n_qubits) {
        throw std::invalid_argument("run_gate_model: reservoir size does not match run configuration");
    }
    const int n = cfg.n_qubits;
    const double tau = cfg.substep();
    const DephasingParams dephasing{cfg.gamma, tau};
    std::optional<Circuit> encoding;
    if (cfg.input_mode == InputMode::Rotations) {
        std::vector<RotationAxis> axes = resolved_axes(cfg);
        encoding.emplace(encoding_layer(n, axes));
    }

    DensityMatrix rho = initial_state(cfg);
    TraceRecorder rec(cfg, inputs);
    double t = 0.0;

    auto evolve_and_read = [&](int step) {
        rho = apply_unitary(rho, substep_unitary.matrix());
        for (int q = 0; q < n; ++q) {
            rho = dephase_qubit(rho, dephasing, q);
        }
        t += tau;
        check_state(cfg, rho);
        rec.record(t, step, [&](int q) { return rho.sigma_z(q); });
    };

    for (int s = 0; s < cfg.warmup_substeps(); ++s) {
        evolve_and_read(-1);
    }
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        if (encoding) {
            rho = apply_unitary(rho, compile(*encoding, {}, cfg.input_scale * inputs[k]));
        } else {
            rho = reset_encode(rho, inputs[k], cfg.encode_qubit);
        }
        for (int v = 0; v < cfg.v_mux; ++v) {
            evolve_and_read(static_cast<int>(k));
        }
    }
    return rec.take();
}

double max_deviation(const Trace& a, const Trace& b) {
    if (a.sigma_z.rows() != b.sigma_z.rows() || a.sigma_z.cols() != b.sigma_z.cols()) {
        throw std::invalid_argument("max_deviation: traces differ in shape");
    }
    if (a.sigma_z.size() == 0) {
        return 0.0;
    }
    return (a.sigma_z - b.sigma_z).cwiseAbs().maxCoeff();
}

CMatrix encoded_states(const Circuit& encoding, std::span<const double> params, std::span<const double> grid) {
    CVector zero = CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << encoding.n_qubits()));
    zero(0) = 1.0;
    return encoded_states(encoding, params, grid, zero);
}

CMatrix encoded_states(const Circuit& encoding, std::span<const double> params, std::span<const double> grid,
                       const CVector& initial) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << encoding.n_qubits());
    if (initial.size() != dim) {
        throw std::invalid_argument("encoded_states: initial state does not match register");
    }
    CMatrix states(dim, static_cast<Eigen::Index>(grid.size()));
    CMatrix column(dim, 1);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        column.col(0) = initial;
        for (const Gate& g : encoding.gates()) {
            apply_gate(column, encoding.n_qubits(), g, params, grid[j]);
        }
        states.col(static_cast<Eigen::Index>(j)) = column.col(0);
    }
    return states;
}

CVector random_product_state(int n_qubits, Rng& rng) {
    CVector psi = haar_state(1, rng);
    for (int q = 1; q < n_qubits; ++q) {
        CVector next = haar_state(1, rng);
        CVector grown(psi.size() * 2);
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            grown(2 * i) = psi(i) * next(0);
            grown(2 * i + 1) = psi(i) * next(1);
        }
        psi = std::move(grown);
    }
    return psi;
}

RVector features_single_cycle(const Circuit& encoding, const ReservoirUnitary& reservoir,
                              std::span<const double> params, double u, EncodingPlacement placement) {
    const int n = encoding.n_qubits();
    if (reservoir.n_qubits() != n) {
        throw std::invalid_argument("features_single_cycle: reservoir size does not match encoding circuit");
    }
    if (static_cast<int>(params.size()) != encoding.n_params()) {
        throw std::invalid_argument("features_single_cycle: parameter count mismatch");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    CMatrix psi = CMatrix::Zero(dim, 1);
    psi(0, 0) = 1.0;
    if (placement == EncodingPlacement::Upfront || encoding.n_encode() == 0) {
        for (const Gate& g : encoding.gates()) {
            apply_gate(psi, n, g, params, u);
        }
        psi = reservoir.matrix() * psi;
    } else {
        // A reservoir application follows every block of n encodes and ends the circuit.
        int since_reservoir = 0;
        for (const Gate& g : encoding.gates()) {
            apply_gate(psi, n, g, params, u);
            if (g.kind == GateKind::ENCODE && ++since_reservoir == n) {
                psi = reservoir.matrix() * psi;
                since_reservoir = 0;
            }
        }
        if (since_reservoir > 0) {
            psi = reservoir.matrix() * psi;
        }
    }
    return psi.col(0).cwiseAbs2();
}

}  // namespace qrcx
