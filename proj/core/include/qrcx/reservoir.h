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
#include <iosfwd>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qrcx/channels.h"
#include "qrcx/circuits.h"
#include "qrcx/linalg.h"
#include "qrcx/tfim.h"

namespace qrcx {

enum class InputMode { Reset, Rotations };

std::string_view input_mode_name(InputMode mode);
InputMode parse_input_mode(std::string_view name);

/// Where the r encoding rotations sit relative to the reservoir unitary.
/// Upfront: S(u) then U_res. Interleaved: blocks of n_qubits encodes, each
/// followed by U_res.
enum class EncodingPlacement { Upfront, Interleaved };

struct RunConfig {
    int n_qubits = 3;
    double dt = 3.0;  ///< time between input injections
    int v_mux = 4;    ///< readouts per input step
    double gamma = 0.01;
    InputMode input_mode = InputMode::Reset;
    double warmup_time = 20.0;
    std::uint64_t seed = 0;
    /// Reset mode: qubit receiving sqrt(1-u)|0> + sqrt(u)|1>.
    int encode_qubit = 0;
    /// Rotations mode: one rotation per axis, round-robin over qubits, angle input_scale * u.
    /// Empty means one axis per qubit drawn from the run seed.
    std::vector<RotationAxis> axes;
    double input_scale = 2.0 * std::numbers::pi;
    /// Fail with InvariantViolation when the state drifts more than 1e-8 from a density matrix.
    bool check_invariants = true;

    double substep() const { return dt / v_mux; }
    int warmup_substeps() const;
    void validate() const;
};

/// sigma_z readouts; warmup readouts carry input_step = -1.
struct Trace {
    std::vector<double> times;
    std::vector<int> input_step;
    RMatrix sigma_z;  ///< one row per readout, one column per qubit
    std::vector<double> inputs;

    std::size_t readouts() const { return times.size(); }
    double max_abs_sigma_z() const;
    /// Long format: time,input_step,qubit,sigma_z
    void write_csv(std::ostream& out) const;
};

/// Axes actually used by a rotations-mode run (cfg.axes or the seeded draw).
std::vector<RotationAxis> resolved_axes(const RunConfig& cfg);

/// Haar-random initial state of a dynamics run, drawn from the run seed.
DensityMatrix initial_state(const RunConfig& cfg);

/// Channel/matrix pipeline: explicit H, dense propagator, literal dephasing
/// map, Kronecker-product reset encoding.
Trace run_physical(const RunConfig& cfg, const TfimSpec& spec, std::span<const double> inputs);

/// Gate pipeline: a precompiled unitary per sub-step dt / V, circuit-level
/// encoding, entrywise dephasing.
Trace run_gate_model(const RunConfig& cfg, const ReservoirUnitary& substep_unitary, std::span<const double> inputs);

/// Largest |difference| between two traces of identical shape.
double max_deviation(const Trace& a, const Trace& b);

/// S(u) applied to |0...0> for every grid point; column j is the state at grid[j].
CMatrix encoded_states(const Circuit& encoding, std::span<const double> params, std::span<const double> grid);

/// Same, starting from `initial` (normalized, length 2^N) instead of |0...0>.
CMatrix encoded_states(const Circuit& encoding, std::span<const double> params, std::span<const double> grid,
                       const CVector& initial);

/// Tensor product of independent Haar-random single-qubit states.
CVector random_product_state(int n_qubits, Rng& rng);

/// Computational-basis probabilities of U_res S(u) |0...0>.
RVector features_single_cycle(const Circuit& encoding, const ReservoirUnitary& reservoir,
                              std::span<const double> params, double u,
                              EncodingPlacement placement = EncodingPlacement::Upfront);

}  // namespace qrcx
