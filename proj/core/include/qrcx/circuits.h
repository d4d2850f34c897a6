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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qrcx/channels.h"
#include "qrcx/linalg.h"
#include "qrcx/tfim.h"

namespace qrcx {

enum class GateKind { RX, RY, RZ, CNOT, CRX, CRY, CRZ, H, ENCODE };

std::string_view gate_kind_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

/// Parametrized kinds read their angle from params[param_slot]; ENCODE reads
/// the circuit input u and rotates about its axis.
struct Gate {
    GateKind kind = GateKind::H;
    int target = 0;
    std::optional<int> control;
    std::optional<int> param_slot;
    std::optional<RotationAxis> axis;

    static Gate rotation(GateKind kind, int target, int slot);
    static Gate controlled_rotation(GateKind kind, int control, int target, int slot);
    static Gate cnot(int control, int target);
    static Gate hadamard(int target);
    static Gate encode(int target, const RotationAxis& axis);

    bool is_parametrized() const;
    bool is_controlled() const { return control.has_value(); }
};

/// Ordered gate list over a fixed register. Parameter slots must cover
/// 0..n_params-1 without gaps.
class Circuit {
  public:
    explicit Circuit(int n_qubits, std::vector<Gate> gates = {}, std::string description = {});

    int n_qubits() const { return n_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    int n_params() const { return n_params_; }
    /// Number of ENCODE gates, r.
    int n_encode() const { return n_encode_; }
    int n_entanglers() const;
    const std::string& description() const { return description_; }

    std::string to_json() const;
    static Circuit from_json(const std::string& text);

  private:
    int n_qubits_;
    std::vector<Gate> gates_;
    std::string description_;
    int n_params_ = 0;
    int n_encode_ = 0;
};

/// Template number (1..19) of the standard low-depth ansatz library.
struct AnsatzId {
    int id = 6;
    int layers = 1;
};

inline constexpr int kAnsatzCount = 19;

/// Template circuit with `layers` repetitions, each with fresh parameters.
/// Throws std::invalid_argument for an unknown id.
Circuit build_ansatz(const AnsatzId& id, int n_qubits);

/// r = axes.size() ENCODE gates, gate i on qubit (i mod n_qubits).
Circuit encoding_layer(int n_qubits, std::span<const RotationAxis> axes);

/// r axes drawn with RotationAxis::sample.
std::vector<RotationAxis> sample_axes(int r, Rng& rng);

/// 2x2 matrix a gate applies on its target (conditioned on the control for
/// controlled kinds).
CMatrix gate_target_matrix(const Gate& gate, std::span<const double> params, double u);

/// Left-multiplies every column of `states` by the gate's full unitary.
void apply_gate(CMatrix& states, int n_qubits, const Gate& gate, std::span<const double> params, double u);

/// U(u, params): product of the gate unitaries in circuit order.
/// Throws std::invalid_argument when params.size() != n_params.
CMatrix compile(const Circuit& c, std::span<const double> params, double u);

/// A fixed reservoir unitary; either a compiled ansatz, the TFIM propagator,
/// or the identity (product-state baseline).
class ReservoirUnitary {
  public:
    ReservoirUnitary(int n_qubits, CMatrix u, std::string label);

    static ReservoirUnitary identity(int n_qubits);
    static ReservoirUnitary from_circuit(const Circuit& c, std::span<const double> params);

    int n_qubits() const { return n_qubits_; }
    const CMatrix& matrix() const { return u_; }
    const std::string& label() const { return label_; }

  private:
    int n_qubits_;
    CMatrix u_;
    std::string label_;
};

/// U_res = exp(-i H dt) for the TFIM described by (spec, j).
ReservoirUnitary tfim_as_reservoir(const TfimSpec& spec, const CouplingMatrix& j, double dt);

}  // namespace qrcx
