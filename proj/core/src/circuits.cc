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

#include "qrcx/circuits.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qrcx {

using nlohmann::json;

namespace {

struct KindName {
    GateKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {GateKind::RX, "RX"},   {GateKind::RY, "RY"},   {GateKind::RZ, "RZ"},
    {GateKind::CNOT, "CNOT"}, {GateKind::CRX, "CRX"}, {GateKind::CRY, "CRY"},
    {GateKind::CRZ, "CRZ"}, {GateKind::H, "H"},     {GateKind::ENCODE, "ENCODE"},
};

bool kind_is_parametrized(GateKind k) {
    switch (k) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::CRX:
        case GateKind::CRY:
        case GateKind::CRZ:
            return true;
        default:
            return false;
    }
}

bool kind_is_controlled(GateKind k) {
    return k == GateKind::CNOT || k == GateKind::CRX || k == GateKind::CRY || k == GateKind::CRZ;
}

// Accumulates template gates, handing out consecutive parameter slots.
class TemplateBuilder {
  public:
    explicit TemplateBuilder(int n) : n_(n) {}

    void rot(GateKind k, int q) { gates_.push_back(Gate::rotation(k, q, next_++)); }
    void rot_all(GateKind k) {
        for (int q = 0; q < n_; ++q) {
            rot(k, q);
        }
    }
    void rot_range(GateKind k, int lo, int hi) {
        for (int q = lo; q <= hi; ++q) {
            rot(k, q);
        }
    }
    void had_all() {
        for (int q = 0; q < n_; ++q) {
            gates_.push_back(Gate::hadamard(q));
        }
    }
    // kind: CNOT, CRX, CRZ, or RZ standing in for CZ.
    void ent(GateKind k, int control, int target) {
        if (k == GateKind::CNOT) {
            gates_.push_back(Gate::cnot(control, target));
        } else if (k == GateKind::H) {
            // CZ = (I x H) CNOT (I x H)
            gates_.push_back(Gate::hadamard(target));
            gates_.push_back(Gate::cnot(control, target));
            gates_.push_back(Gate::hadamard(target));
        } else {
            gates_.push_back(Gate::controlled_rotation(k, control, target, next_++));
        }
    }
    // (q+1 -> q) for q = n-2 .. 0
    void ladder(GateKind k) {
        for (int q = n_ - 2; q >= 0; --q) {
            ent(k, q + 1, q);
        }
    }
    // (q+1 -> q) for q of the given parity, bottom of the register first within the column.
    void pairs(GateKind k, int parity) {
        for (int q = parity; q + 1 < n_; q += 2) {
            ent(k, q + 1, q);
        }
    }
    // (n-1 -> 0), (n-2 -> n-1), ..., (0 -> 1)
    void ring_down(GateKind k) {
        if (n_ < 2) {
            return;
        }
        for (int s = 0; s < n_; ++s) {
            ent(k, n_ - 1 - s, (n_ - s) % n_);
        }
    }
    // (n-1 -> n-2), (0 -> n-1), (1 -> 0), ..., (n-2 -> n-3)
    void ring_up(GateKind k) {
        if (n_ < 2) {
            return;
        }
        for (int s = 0; s < n_; ++s) {
            ent(k, (n_ - 1 + s) % n_, (n_ - 2 + s) % n_);
        }
    }
    // every ordered pair, controls from the bottom qubit up
    void all_to_all(GateKind k) {
        for (int c = n_ - 1; c >= 0; --c) {
            for (int t = n_ - 1; t >= 0; --t) {
                if (t != c) {
                    ent(k, c, t);
                }
            }
        }
    }

    std::vector<Gate> take() { return std::move(gates_); }

  private:
    int n_;
    int next_ = 0;
    std::vector<Gate> gates_;
};

constexpr GateKind kCZ = GateKind::H;  // marker for ent(): CZ via H-CNOT-H

// One layer of template `id`; slots are local to the layer.
std::vector<Gate> template_layer(int id, int n) {
    TemplateBuilder b(n);
    auto rxrz = [&] {
        b.rot_all(GateKind::RX);
        b.rot_all(GateKind::RZ);
    };
    switch (id) {
        case 1:
            rxrz();
            break;
        case 2:
            rxrz();
            b.ladder(GateKind::CNOT);
            break;
        case 3:
            rxrz();
            b.ladder(GateKind::CRZ);
            break;
        case 4:
            rxrz();
            b.ladder(GateKind::CRX);
            break;
        case 5:
        case 6:
            rxrz();
            b.all_to_all(id == 5 ? GateKind::CRZ : GateKind::CRX);
            rxrz();
            break;
        case 7:
        case 8: {
            GateKind k = id == 7 ? GateKind::CRZ : GateKind::CRX;
            rxrz();
            b.pairs(k, 0);
            rxrz();
            b.pairs(k, 1);
            break;
        }
        case 9:
            b.had_all();
            b.ladder(kCZ);
            b.rot_all(GateKind::RX);
            break;
        case 10:
            b.rot_all(GateKind::RY);
            b.ladder(kCZ);
            if (n > 2) {
                b.ent(kCZ, 0, n - 1);
            }
            b.rot_all(GateKind::RY);
            break;
        case 11:
        case 12: {
            GateKind k = id == 11 ? GateKind::CNOT : kCZ;
            b.rot_all(GateKind::RY);
            b.rot_all(GateKind::RZ);
            b.pairs(k, 0);
            if (n > 2) {
                b.rot_range(GateKind::RY, 1, n - 2);
                b.rot_range(GateKind::RZ, 1, n - 2);
            }
            b.pairs(k, 1);
            break;
        }
        case 13:
        case 14: {
            GateKind k = id == 13 ? GateKind::CRZ : GateKind::CRX;
            b.rot_all(GateKind::RY);
            b.ring_down(k);
            b.rot_all(GateKind::RY);
            b.ring_up(k);
            break;
        }
        case 15:
            b.rot_all(GateKind::RY);
            b.ring_down(GateKind::CNOT);
            b.rot_all(GateKind::RY);
            b.ring_up(GateKind::CNOT);
            break;
        case 16:
        case 17: {
            GateKind k = id == 16 ? GateKind::CRZ : GateKind::CRX;
            rxrz();
            b.pairs(k, 0);
            b.pairs(k, 1);
            break;
        }
        case 18:
        case 19:
            rxrz();
            b.ring_down(id == 18 ? GateKind::CRZ : GateKind::CRX);
            break;
        default:
            throw std::invalid_argument("build_ansatz: unknown template id " + std::to_string(id));
    }
    return b.take();
}

const char* template_description(int id) {
    switch (id) {
        case 1: return "RX,RZ on every qubit; no entanglers (product state)";
        case 2: return "circuit 1 + CNOT ladder (q+1 -> q), bottom to top";
        case 3: return "circuit 1 + CRZ ladder (q+1 -> q), bottom to top";
        case 4: return "circuit 1 + CRX ladder (q+1 -> q), bottom to top";
        case 5: return "RX,RZ; all-to-all CRZ (controls from the last qubit up); RX,RZ";
        case 6: return "RX,RZ; all-to-all CRX (controls from the last qubit up); RX,RZ";
        case 7: return "RX,RZ; CRZ on (1->0),(3->2),...; RX,RZ; CRZ on (2->1),(4->3),...";
        case 8: return "RX,RZ; CRX on (1->0),(3->2),...; RX,RZ; CRX on (2->1),(4->3),...";
        case 9: return "H on every qubit; CZ ladder (q+1, q); RX on every qubit";
        case 10: return "RY; CZ ladder (q+1, q) closed by CZ(0, n-1); RY";
        case 11: return "RY,RZ; CNOT (1->0),(3->2),...; RY,RZ on inner qubits; CNOT (2->1),...";
        case 12: return "RY,RZ; CZ (1,0),(3,2),...; RY,RZ on inner qubits; CZ (2,1),...";
        case 13: return "RY; CRZ ring (n-1->0),(n-2->n-1),...,(0->1); RY; CRZ ring (n-1->n-2),(0->n-1),(1->0),...";
        case 14: return "RY; CRX ring (n-1->0),(n-2->n-1),...,(0->1); RY; CRX ring (n-1->n-2),(0->n-1),(1->0),...";
        case 15: return "RY; CNOT ring (n-1->0),(n-2->n-1),...,(0->1); RY; CNOT ring (n-1->n-2),(0->n-1),(1->0),...";
        case 16: return "RX,RZ; CRZ on (1->0),(3->2),... then (2->1),(4->3),...";
        case 17: return "RX,RZ; CRX on (1->0),(3->2),... then (2->1),(4->3),...";
        case 18: return "RX,RZ; CRZ ring (n-1->0),(n-2->n-1),...,(0->1)";
        case 19: return "RX,RZ; CRX ring (n-1->0),(n-2->n-1),...,(0->1)";
        default: return "";
    }
}

// In-place update of amplitude pairs (a0, a1) differing in the target bit.
// std::complex operator* goes through __muldc3 here; spell the products out.
inline Complex mul_add(Complex a, Complex x, Complex b, Complex y) {
    return {(a.real() * x.real() - a.imag() * x.imag()) + (b.real() * y.real() - b.imag() * y.imag()),
            (a.real() * x.imag() + a.imag() * x.real()) + (b.real() * y.imag() + b.imag() * y.real())};
}

void apply_local(CMatrix& states, std::size_t dim, std::size_t tbit, std::optional<std::size_t> cbit,
                 const CMatrix& g) {
    const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
    const std::size_t tmask = std::size_t{1} << tbit;
    const std::size_t cmask = cbit ? (std::size_t{1} << *cbit) : 0;
    const Eigen::Index cols = states.cols();
    for (Eigen::Index c = 0; c < cols; ++c) {
        Complex* col = states.col(c).data();
        for (std::size_t a0 = 0; a0 < dim; ++a0) {
            if ((a0 & tmask) || (cmask && !(a0 & cmask))) {
                continue;
            }
            const std::size_t a1 = a0 | tmask;
            const Complex x0 = col[a0], x1 = col[a1];
            col[a0] = mul_add(g00, x0, g01, x1);
            col[a1] = mul_add(g10, x0, g11, x1);
        }
    }
}

}  // namespace

std::string_view gate_kind_name(GateKind kind) {
    for (const auto& kn : kKindNames) {
        if (kn.kind == kind) {
            return kn.name;
        }
    }
    return "?";
}

GateKind parse_gate_kind(std::string_view name) {
    for (const auto& kn : kKindNames) {
        if (kn.name == name) {
            return kn.kind;
        }
    }
    throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

Gate Gate::rotation(GateKind kind, int target, int slot) {
    Gate g;
    g.kind = kind;
    g.target = target;
    g.param_slot = slot;
    return g;
}

Gate Gate::controlled_rotation(GateKind kind, int control, int target, int slot) {
    Gate g = rotation(kind, target, slot);
    g.control = control;
    return g;
}

Gate Gate::cnot(int control, int target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.control = control;
    g.target = target;
    return g;
}

Gate Gate::hadamard(int target) {
    Gate g;
    g.kind = GateKind::H;
    g.target = target;
    return g;
}

Gate Gate::encode(int target, const RotationAxis& axis) {
    Gate g;
    g.kind = GateKind::ENCODE;
    g.target = target;
    g.axis = axis;
    return g;
}

bool Gate::is_parametrized() const { return kind_is_parametrized(kind); }

Circuit::Circuit(int n_qubits, std::vector<Gate> gates, std::string description)
    : n_qubits_(n_qubits), gates_(std::move(gates)), description_(std::move(description)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("Circuit: qubit count out of range");
    }
    std::vector<bool> seen;
    for (const Gate& g : gates_) {
        if (g.target < 0 || g.target >= n_qubits_) {
            throw std::invalid_argument("Circuit: target index out of range");
        }
        if (kind_is_controlled(g.kind) != g.control.has_value()) {
            throw std::invalid_argument("Circuit: control presence does not match gate kind");
        }
        if (g.control && (*g.control < 0 || *g.control >= n_qubits_ || *g.control == g.target)) {
            throw std::invalid_argument("Circuit: invalid control index");
        }
        if (kind_is_parametrized(g.kind) != g.param_slot.has_value()) {
            throw std::invalid_argument("Circuit: parameter slot presence does not match gate kind");
        }
        if ((g.kind == GateKind::ENCODE) != g.axis.has_value()) {
            throw std::invalid_argument("Circuit: only ENCODE gates carry an axis, and they must");
        }
        if (g.param_slot) {
            if (*g.param_slot < 0) {
                throw std::invalid_argument("Circuit: negative parameter slot");
            }
            auto slot = static_cast<std::size_t>(*g.param_slot);
            if (slot >= seen.size()) {
                seen.resize(slot + 1, false);
            }
            seen[slot] = true;
        }
        if (g.kind == GateKind::ENCODE) {
            ++n_encode_;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("Circuit: parameter slots are not contiguous from 0");
    }
    n_params_ = static_cast<int>(seen.size());
}

int Circuit::n_entanglers() const {
    return static_cast<int>(std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_controlled(); }));
}

std::string Circuit::to_json() const {
    json gates = json::array();
    for (const Gate& g : gates_) {
        json jg;
        jg["kind"] = std::string(gate_kind_name(g.kind));
        jg["target"] = g.target;
        if (g.control) {
            jg["control"] = *g.control;
        }
        if (g.param_slot) {
            jg["param_slot"] = *g.param_slot;
        }
        if (g.axis) {
            jg["axis"] = {g.axis->nx(), g.axis->ny(), g.axis->nz()};
        }
        gates.push_back(std::move(jg));
    }
    json out;
    out["n_qubits"] = n_qubits_;
    out["description"] = description_;
    out["gates"] = std::move(gates);
    return out.dump(2);
}

Circuit Circuit::from_json(const std::string& text) {
    json in = json::parse(text);
    std::vector<Gate> gates;
    for (const json& jg : in.at("gates")) {
        Gate g;
        g.kind = parse_gate_kind(jg.at("kind").get<std::string>());
        g.target = jg.at("target").get<int>();
        if (jg.contains("control")) {
            g.control = jg["control"].get<int>();
        }
        if (jg.contains("param_slot")) {
            g.param_slot = jg["param_slot"].get<int>();
        }
        if (jg.contains("axis")) {
            auto v = jg["axis"].get<std::vector<double>>();
            if (v.size() != 3) {
                throw std::invalid_argument("Circuit::from_json: axis needs three components");
            }
            g.axis = RotationAxis(v[0], v[1], v[2]);
        }
        gates.push_back(g);
    }
    return Circuit(in.at("n_qubits").get<int>(), std::move(gates), in.value("description", std::string{}));
}

Circuit build_ansatz(const AnsatzId& id, int n_qubits) {
    if (id.id < 1 || id.id > kAnsatzCount) {
        throw std::invalid_argument("build_ansatz: unknown template id " + std::to_string(id.id));
    }
    if (id.layers < 1) {
        throw std::invalid_argument("build_ansatz: layers must be positive");
    }
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("build_ansatz: qubit count out of range");
    }
    std::vector<Gate> gates;
    int offset = 0;
    for (int layer = 0; layer < id.layers; ++layer) {
        std::vector<Gate> one = template_layer(id.id, n_qubits);
        int used = 0;
        for (Gate& g : one) {
            if (g.param_slot) {
                used = std::max(used, *g.param_slot + 1);
                *g.param_slot += offset;
            }
            gates.push_back(g);
        }
        offset += used;
    }
    std::string desc = "circuit " + std::to_string(id.id) + ": " + template_description(id.id);
    if (id.layers > 1) {
        desc += " (x" + std::to_string(id.layers) + " layers)";
    }
    return Circuit(n_qubits, std::move(gates), std::move(desc));
}

Circuit encoding_layer(int n_qubits, std::span<const RotationAxis> axes) {
    if (axes.empty()) {
        throw std::invalid_argument("encoding_layer: need at least one encoding gate");
    }
    std::vector<Gate> gates;
    gates.reserve(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) {
        gates.push_back(Gate::encode(static_cast<int>(i % static_cast<std::size_t>(n_qubits)), axes[i]));
    }
    return Circuit(n_qubits, std::move(gates), "encoding layer, r=" + std::to_string(axes.size()));
}

std::vector<RotationAxis> sample_axes(int r, Rng& rng) {
    std::vector<RotationAxis> axes;
    axes.reserve(static_cast<std::size_t>(std::max(r, 0)));
    for (int i = 0; i < r; ++i) {
        axes.push_back(RotationAxis::sample(rng));
    }
    return axes;
}

CMatrix gate_target_matrix(const Gate& gate, std::span<const double> params, double u) {
    auto angle = [&]() {
        auto slot = static_cast<std::size_t>(*gate.param_slot);
        if (slot >= params.size()) {
            throw std::invalid_argument("gate references a parameter slot beyond the parameter vector");
        }
        return params[slot];
    };
    switch (gate.kind) {
        case GateKind::RX:
        case GateKind::CRX:
            return rx(angle());
        case GateKind::RY:
        case GateKind::CRY:
            return ry(angle());
        case GateKind::RZ:
        case GateKind::CRZ:
            return rz(angle());
        case GateKind::CNOT:
            return pauli(PauliAxis::X);
        case GateKind::H: {
            CMatrix h(2, 2);
            h << 1.0, 1.0, 1.0, -1.0;
            return h / std::sqrt(2.0);
        }
        case GateKind::ENCODE:
            return rotation_gate(*gate.axis, u);
    }
    throw std::logic_error("unhandled gate kind");
}

void apply_gate(CMatrix& states, int n_qubits, const Gate& gate, std::span<const double> params, double u) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (static_cast<std::size_t>(states.rows()) != dim) {
        throw std::invalid_argument("apply_gate: state dimension does not match register");
    }
    std::optional<std::size_t> cbit;
    if (gate.control) {
        cbit = qubit_shift(*gate.control, n_qubits);
    }
    apply_local(states, dim, qubit_shift(gate.target, n_qubits), cbit, gate_target_matrix(gate, params, u));
}

CMatrix compile(const Circuit& c, std::span<const double> params, double u) {
    if (static_cast<int>(params.size()) != c.n_params()) {
        throw std::invalid_argument("compile: expected " + std::to_string(c.n_params()) + " parameters, got " +
                                    std::to_string(params.size()));
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << c.n_qubits());
    CMatrix u_total = CMatrix::Identity(dim, dim);
    for (const Gate& g : c.gates()) {
        apply_gate(u_total, c.n_qubits(), g, params, u);
    }
    return u_total;
}

ReservoirUnitary::ReservoirUnitary(int n_qubits, CMatrix u, std::string label)
    : n_qubits_(n_qubits), u_(std::move(u)), label_(std::move(label)) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    if (u_.rows() != dim || u_.cols() != dim) {
        throw std::invalid_argument("ReservoirUnitary: dimension mismatch");
    }
}

ReservoirUnitary ReservoirUnitary::identity(int n_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    return ReservoirUnitary(n_qubits, CMatrix::Identity(dim, dim), "identity");
}

ReservoirUnitary ReservoirUnitary::from_circuit(const Circuit& c, std::span<const double> params) {
    return ReservoirUnitary(c.n_qubits(), compile(c, params, 0.0), c.description());
}

ReservoirUnitary tfim_as_reservoir(const TfimSpec& spec, const CouplingMatrix& j, double dt) {
    return ReservoirUnitary(spec.n_qubits, propagator(hamiltonian(spec, j), dt), "tfim");
}

}  // namespace qrcx
