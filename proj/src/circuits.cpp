// Copyright 2026 The pqcreg developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pqcreg/circuits.hpp"

#include "pqcreg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace pqcreg {

namespace {

std::string join_names(const std::vector<std::string> &names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += names[i];
    }
    return out;
}

SubEncoder parse_sub(std::string_view token, std::string_view full) {
    if (token == "A1") {
        return SubEncoder::A1;
    }
    if (token == "A2") {
        return SubEncoder::A2;
    }
    if (token == "M") {
        return SubEncoder::M;
    }
    throw Error(ErrorKind::Config, "unknown encoder \"" + std::string(full) +
                                       "\"; legal names are: " +
                                       join_names(encoder_names()));
}

struct AnsatzNameEntry {
    const char *name;
    AnsatzKind kind;
};

constexpr AnsatzNameEntry kAnsatzTable[] = {
    {"Modified-Pauli-CRZ", AnsatzKind::ModifiedPauliCRZ},
    {"Modified-Pauli-CRX", AnsatzKind::ModifiedPauliCRX},
    {"Efficient-CRZ", AnsatzKind::EfficientCRZ},
    {"Efficient-CRX", AnsatzKind::EfficientCRX},
    {"HWE-CNOT", AnsatzKind::HweCnot},
    {"HWE-CZ", AnsatzKind::HweCz},
    {"ESU2", AnsatzKind::Esu2},
    {"Full-Pauli-CRZ", AnsatzKind::FullPauliCRZ},
    {"Full-Pauli-CRX", AnsatzKind::FullPauliCRX},
    {"Hadamard", AnsatzKind::Hadamard},
    {"Full-CRZ", AnsatzKind::FullCRZ},
    {"Full-CRX", AnsatzKind::FullCRX},
};

// ---------------------------------------------------------------------
// Template emission helpers.
// ---------------------------------------------------------------------

void emit_fixed(CircuitTemplate &t, GateKind kind, int q0, int q1 = 0) {
    Slot s;
    s.kind = kind;
    s.qubit0 = q0;
    s.qubit1 = q1;
    s.binding = Slot::Binding::Fixed;
    t.slots.push_back(s);
}

void emit_feature(CircuitTemplate &t, GateKind kind, int q0,
                  FeatureTransform transform, int f0, int f1 = 0, int q1 = 0) {
    Slot s;
    s.kind = kind;
    s.qubit0 = q0;
    s.qubit1 = q1;
    s.binding = Slot::Binding::Feature;
    s.transform = transform;
    s.feature0 = f0;
    s.feature1 = f1;
    t.slots.push_back(s);
}

void emit_param(CircuitTemplate &t, GateKind kind, int q0, int &next_param,
                int q1 = 0) {
    Slot s;
    s.kind = kind;
    s.qubit0 = q0;
    s.qubit1 = q1;
    s.binding = Slot::Binding::Param;
    s.param = next_param++;
    t.slots.push_back(s);
}

/// Trainable rotation on every qubit.
void rot_each(CircuitTemplate &t, GateKind kind, int n, int &p) {
    for (int q = 0; q < n; ++q) {
        emit_param(t, kind, q, p);
    }
}

/// Trainable controlled rotation down the chain (q controls q+1).
void crot_chain(CircuitTemplate &t, GateKind kind, int n, int &p) {
    for (int q = 0; q + 1 < n; ++q) {
        emit_param(t, kind, q, p, q + 1);
    }
}

/// Trainable controlled rotation for every ordered pair (i controls j).
void crot_pairs(CircuitTemplate &t, GateKind kind, int n, int &p) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j != i) {
                emit_param(t, kind, i, p, j);
            }
        }
    }
}

/// Fixed entangler down the chain.
void ent_chain(CircuitTemplate &t, GateKind kind, int n) {
    for (int q = 0; q + 1 < n; ++q) {
        emit_fixed(t, kind, q, q + 1);
    }
}

/// One single-layer encoding block (A1 / A2 / M / IQP) over all qubits.
/// Feature i drives qubits r*i .. r*i+r-1, so qubit q reads feature q/r.
void emit_encoding_layer(CircuitTemplate &t, SubEncoder sub, int n, int r) {
    const auto feat = [r](int q) { return q / r; };
    switch (sub) {
    case SubEncoder::A1:
        for (int q = 0; q < n; ++q) {
            emit_feature(t, GateKind::RY, q, FeatureTransform::Raw, feat(q));
        }
        break;
    case SubEncoder::A2:
        for (int q = 0; q < n; ++q) {
            emit_feature(t, GateKind::RY, q, FeatureTransform::Raw, feat(q));
            emit_feature(t, GateKind::RZ, q, FeatureTransform::Raw, feat(q));
        }
        break;
    case SubEncoder::M:
        for (int q = 0; q < n; ++q) {
            emit_feature(t, GateKind::RY, q, FeatureTransform::ArcsinSq,
                         feat(q));
            emit_feature(t, GateKind::RZ, q, FeatureTransform::ArccosSq,
                         feat(q));
        }
        break;
    case SubEncoder::IQP:
        for (int q = 0; q < n; ++q) {
            emit_fixed(t, GateKind::H, q);
        }
        for (int q = 0; q < n; ++q) {
            emit_feature(t, GateKind::RZ, q, FeatureTransform::Raw, feat(q));
        }
        // ZZ entanglers for all qubit pairs i<j in lexicographic order;
        // they mutually commute, so the order is observationally inert.
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                emit_feature(t, GateKind::ZZ, i,
                             FeatureTransform::ProductPair, feat(i), feat(j),
                             j);
            }
        }
        break;
    }
}

double transform_angle(FeatureTransform transform, double x0, double x1) {
    switch (transform) {
    case FeatureTransform::Raw:
        return x0;
    case FeatureTransform::ArcsinSq:
        return std::asin(std::min(x0 * x0, 1.0));
    case FeatureTransform::ArccosSq:
        return std::acos(std::min(x0 * x0, 1.0));
    case FeatureTransform::ProductPair:
        return x0 * x1;
    }
    return x0;
}

} // namespace

const std::vector<std::string> &encoder_names() {
    static const std::vector<std::string> names = {
        "A1",         "A2",         "M",          "IQP",       "A1-A1-CNOT",
        "A2-A2-CNOT", "M-M-CNOT",   "M-A1-CNOT",  "M-A2-CNOT", "A1-A1-CZ",
        "A2-A2-CZ",   "M-M-CZ",     "M-A1-CZ",    "M-A2-CZ"};
    return names;
}

const std::vector<std::string> &ansatz_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto &entry : kAnsatzTable) {
            out.emplace_back(entry.name);
        }
        return out;
    }();
    return names;
}

EncoderSpec EncoderSpec::parse(std::string_view name) {
    const auto &legal = encoder_names();
    if (std::find(legal.begin(), legal.end(), name) == legal.end()) {
        throw Error(ErrorKind::Config,
                    "unknown encoder \"" + std::string(name) +
                        "\"; legal names are: " + join_names(legal));
    }

    EncoderSpec spec;
    spec.name = std::string(name);
    const auto dash = name.find('-');
    if (dash == std::string_view::npos) {
        spec.two_layer = false;
        if (name == "A1") {
            spec.layer1 = SubEncoder::A1;
        } else if (name == "A2") {
            spec.layer1 = SubEncoder::A2;
        } else if (name == "M") {
            spec.layer1 = SubEncoder::M;
        } else {
            spec.layer1 = SubEncoder::IQP;
        }
        return spec;
    }

    const auto second_dash = name.rfind('-');
    spec.two_layer = true;
    spec.layer1 = parse_sub(name.substr(0, dash), name);
    spec.layer2 =
        parse_sub(name.substr(dash + 1, second_dash - dash - 1), name);
    spec.entangler = name.substr(second_dash + 1) == "CZ" ? GateKind::CZ
                                                          : GateKind::CNOT;
    return spec;
}

AnsatzSpec AnsatzSpec::parse(std::string_view name) {
    for (const auto &entry : kAnsatzTable) {
        if (name == entry.name) {
            return AnsatzSpec{std::string(name), entry.kind};
        }
    }
    throw Error(ErrorKind::Config,
                "unknown ansatz \"" + std::string(name) +
                    "\"; legal names are: " + join_names(ansatz_names()));
}

void CircuitSpec::validate() const {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw Error(ErrorKind::Config,
                    "n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                        "], got " + std::to_string(n_qubits));
    }
    if (rud < 1 || rud > kMaxDepthKnob) {
        throw Error(ErrorKind::Config,
                    "re-upload depth must be in [1, " +
                        std::to_string(kMaxDepthKnob) + "], got " +
                        std::to_string(rud));
    }
    if (ansatz_layers < 1 || ansatz_layers > kMaxDepthKnob) {
        throw Error(ErrorKind::Config,
                    "ansatz layer count must be in [1, " +
                        std::to_string(kMaxDepthKnob) + "], got " +
                        std::to_string(ansatz_layers));
    }
    if (redundancy < 1) {
        throw Error(ErrorKind::Config, "redundancy must be >= 1");
    }
    if (n_qubits % redundancy != 0) {
        throw Error(ErrorKind::Config,
                    "n_qubits (" + std::to_string(n_qubits) +
                        ") must be divisible by redundancy (" +
                        std::to_string(redundancy) + ")");
    }
}

std::vector<GateOp> CircuitTemplate::bind(std::span<const double> theta,
                                          std::span<const double> x) const {
    if (static_cast<int>(theta.size()) != total_params) {
        throw Error(ErrorKind::InvalidArgument,
                    "parameter vector has " + std::to_string(theta.size()) +
                        " entries, template expects " +
                        std::to_string(total_params));
    }
    if (static_cast<int>(x.size()) != n_features) {
        throw Error(ErrorKind::InvalidArgument,
                    "feature vector has " + std::to_string(x.size()) +
                        " entries, template expects " +
                        std::to_string(n_features));
    }
    for (const double v : theta) {
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::InvalidArgument,
                        "parameter vector contains a non-finite value");
        }
    }

    std::vector<GateOp> gates;
    gates.reserve(slots.size());
    for (const auto &slot : slots) {
        GateOp op;
        op.kind = slot.kind;
        op.qubit0 = slot.qubit0;
        op.qubit1 = slot.qubit1;
        switch (slot.binding) {
        case Slot::Binding::Fixed:
            op.angle = slot.fixed_angle;
            break;
        case Slot::Binding::Param:
            op.angle = theta[static_cast<std::size_t>(slot.param)];
            break;
        case Slot::Binding::Feature: {
            const double x0 = x[static_cast<std::size_t>(slot.feature0)];
            const double x1 = x[static_cast<std::size_t>(slot.feature1)];
            if (slot.transform == FeatureTransform::ArcsinSq ||
                slot.transform == FeatureTransform::ArccosSq) {
                if (std::abs(x0) > 1.0 + 1e-12) {
                    throw Error(ErrorKind::Compute,
                                "feature x[" + std::to_string(slot.feature0) +
                                    "] = " + std::to_string(x0) +
                                    " outside [-1, 1]; the M encoder needs "
                                    "x^2 in [0, 1]");
                }
            }
            op.angle = transform_angle(slot.transform, x0, x1);
            break;
        }
        }
        gates.push_back(op);
    }
    return gates;
}

CircuitTemplate build_encoder(const EncoderSpec &enc, int n_qubits,
                              int redundancy) {
    if (n_qubits < 1) {
        throw Error(ErrorKind::Config, "n_qubits must be >= 1");
    }
    if (redundancy < 1 || n_qubits % redundancy != 0) {
        throw Error(ErrorKind::Config,
                    "n_qubits (" + std::to_string(n_qubits) +
                        ") must be divisible by redundancy (" +
                        std::to_string(redundancy) + ")");
    }
    CircuitTemplate t;
    t.n_qubits = n_qubits;
    t.n_features = n_qubits / redundancy;
    t.total_params = 0;

    emit_encoding_layer(t, enc.layer1, n_qubits, redundancy);
    if (enc.two_layer) {
        ent_chain(t, enc.entangler, n_qubits);
        emit_encoding_layer(t, enc.layer2, n_qubits, redundancy);
        ent_chain(t, enc.entangler, n_qubits);
    }
    return t;
}

int ansatz_param_count(AnsatzKind kind, int n_qubits) {
    const int n = n_qubits;
    const int chain = n > 1 ? n - 1 : 0;
    const int pairs = n * (n - 1);
    switch (kind) {
    case AnsatzKind::ModifiedPauliCRZ:
    case AnsatzKind::ModifiedPauliCRX:
        return 2 * n + chain;
    case AnsatzKind::EfficientCRZ:
    case AnsatzKind::EfficientCRX:
        return n + chain;
    case AnsatzKind::HweCnot:
    case AnsatzKind::HweCz:
        return 2 * n;
    case AnsatzKind::Esu2:
        return 4 * n;
    case AnsatzKind::FullPauliCRZ:
    case AnsatzKind::FullPauliCRX:
        return 4 * n + pairs;
    case AnsatzKind::Hadamard:
        return n;
    case AnsatzKind::FullCRZ:
    case AnsatzKind::FullCRX:
        return n + pairs;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown ansatz kind");
}

CircuitTemplate ansatz_layout(const AnsatzSpec &ans, int n_qubits) {
    if (n_qubits < 1) {
        throw Error(ErrorKind::Config, "n_qubits must be >= 1");
    }
    CircuitTemplate t;
    t.n_qubits = n_qubits;
    t.n_features = 0;
    int p = 0;
    const int n = n_qubits;

    switch (ans.kind) {
    case AnsatzKind::ModifiedPauliCRZ:
        rot_each(t, GateKind::RX, n, p);
        rot_each(t, GateKind::RZ, n, p);
        crot_chain(t, GateKind::CRZ, n, p);
        break;
    case AnsatzKind::ModifiedPauliCRX:
        rot_each(t, GateKind::RX, n, p);
        rot_each(t, GateKind::RZ, n, p);
        crot_chain(t, GateKind::CRX, n, p);
        break;
    case AnsatzKind::EfficientCRZ:
        rot_each(t, GateKind::RY, n, p);
        crot_chain(t, GateKind::CRZ, n, p);
        break;
    case AnsatzKind::EfficientCRX:
        rot_each(t, GateKind::RY, n, p);
        crot_chain(t, GateKind::CRX, n, p);
        break;
    case AnsatzKind::HweCnot:
        rot_each(t, GateKind::RY, n, p);
        rot_each(t, GateKind::RZ, n, p);
        ent_chain(t, GateKind::CNOT, n);
        break;
    case AnsatzKind::HweCz:
        rot_each(t, GateKind::RY, n, p);
        rot_each(t, GateKind::RZ, n, p);
        ent_chain(t, GateKind::CZ, n);
        break;
    case AnsatzKind::Esu2:
        rot_each(t, GateKind::RY, n, p);
        rot_each(t, GateKind::RZ, n, p);
        ent_chain(t, GateKind::CNOT, n);
        rot_each(t, GateKind::RY, n, p);
        rot_each(t, GateKind::RZ, n, p);
        break;
    case AnsatzKind::FullPauliCRZ:
        rot_each(t, GateKind::RX, n, p);
        rot_each(t, GateKind::RZ, n, p);
        crot_pairs(t, GateKind::CRZ, n, p);
        rot_each(t, GateKind::RX, n, p);
        rot_each(t, GateKind::RZ, n, p);
        break;
    case AnsatzKind::FullPauliCRX:
        rot_each(t, GateKind::RX, n, p);
        rot_each(t, GateKind::RZ, n, p);
        crot_pairs(t, GateKind::CRX, n, p);
        rot_each(t, GateKind::RX, n, p);
        rot_each(t, GateKind::RZ, n, p);
        break;
    case AnsatzKind::Hadamard:
        for (int q = 0; q < n; ++q) {
            emit_fixed(t, GateKind::H, q);
        }
        ent_chain(t, GateKind::CZ, n);
        rot_each(t, GateKind::RX, n, p);
        break;
    case AnsatzKind::FullCRZ:
        rot_each(t, GateKind::RY, n, p);
        crot_pairs(t, GateKind::CRZ, n, p);
        break;
    case AnsatzKind::FullCRX:
        rot_each(t, GateKind::RY, n, p);
        crot_pairs(t, GateKind::CRX, n, p);
        break;
    }

    t.total_params = p;
    return t;
}

namespace {

void append_fragment(CircuitTemplate &dst, const CircuitTemplate &src,
                     int param_offset) {
    for (Slot slot : src.slots) {
        if (slot.binding == Slot::Binding::Param) {
            slot.param += param_offset;
        }
        dst.slots.push_back(slot);
    }
}

} // namespace

CircuitTemplate assemble_pqc(const CircuitSpec &spec) {
    spec.validate();
    const CircuitTemplate encoder =
        build_encoder(spec.encoder, spec.n_qubits, spec.redundancy);
    const CircuitTemplate layer = ansatz_layout(spec.ansatz, spec.n_qubits);

    CircuitTemplate t;
    t.n_qubits = spec.n_qubits;
    t.n_features = encoder.n_features;
    int offset = 0;
    for (int k = 0; k < spec.rud; ++k) {
        append_fragment(t, encoder, 0);
        for (int v = 0; v < spec.ansatz_layers; ++v) {
            append_fragment(t, layer, offset);
            offset += layer.total_params;
        }
    }
    t.total_params = offset;
    return t;
}

double evaluate(const CircuitTemplate &tmpl, std::span<const double> theta,
                std::span<const double> x) {
    const auto gates = tmpl.bind(theta, x);
    StateVector state(tmpl.n_qubits);
    apply_gates(state, gates);
    return expectation_z0(state);
}

namespace {

std::string slot_line(const Slot &slot) {
    std::ostringstream os;
    os << gate_name(slot.kind) << " q" << slot.qubit0;
    if (gate_arity(slot.kind) == 2) {
        if (slot.kind == GateKind::CNOT || slot.kind == GateKind::CRX ||
            slot.kind == GateKind::CRZ) {
            os << "->q" << slot.qubit1;
        } else {
            os << ",q" << slot.qubit1;
        }
    }
    switch (slot.binding) {
    case Slot::Binding::Fixed:
        break;
    case Slot::Binding::Param:
        os << "  theta[" << slot.param << "]";
        break;
    case Slot::Binding::Feature:
        if (slot.transform == FeatureTransform::ProductPair) {
            os << "  x[" << slot.feature0 << "]*x[" << slot.feature1 << "]";
        } else if (slot.transform == FeatureTransform::Raw) {
            os << "  x[" << slot.feature0 << "]";
        } else {
            os << "  "
               << (slot.transform == FeatureTransform::ArcsinSq ? "arcsin"
                                                                : "arccos")
               << "(x[" << slot.feature0 << "]^2)";
        }
        break;
    }
    return os.str();
}

int circuit_depth(const CircuitTemplate &t) {
    std::vector<int> level(static_cast<std::size_t>(t.n_qubits), 0);
    int depth = 0;
    for (const auto &slot : t.slots) {
        int at = level[static_cast<std::size_t>(slot.qubit0)];
        if (gate_arity(slot.kind) == 2) {
            at = std::max(at, level[static_cast<std::size_t>(slot.qubit1)]);
        }
        ++at;
        level[static_cast<std::size_t>(slot.qubit0)] = at;
        if (gate_arity(slot.kind) == 2) {
            level[static_cast<std::size_t>(slot.qubit1)] = at;
        }
        depth = std::max(depth, at);
    }
    return depth;
}

} // namespace

std::string describe_circuit(const CircuitSpec &spec) {
    const CircuitTemplate tmpl = assemble_pqc(spec);
    const CircuitTemplate encoder =
        build_encoder(spec.encoder, spec.n_qubits, spec.redundancy);
    const CircuitTemplate layer = ansatz_layout(spec.ansatz, spec.n_qubits);

    std::ostringstream os;
    os << "circuit " << spec.encoder.name << "_" << spec.ansatz.name << "\n";
    os << "  qubits: " << spec.n_qubits << "  features: " << tmpl.n_features
       << "  redundancy: " << spec.redundancy << "\n";
    os << "  re-upload depth: " << spec.rud
       << "  ansatz layers: " << spec.ansatz_layers << "\n";
    os << "  trainable parameters: " << tmpl.total_params << " ("
       << spec.rud << " x " << spec.ansatz_layers << " x "
       << layer.total_params << ")\n";
    os << "  gate count: " << tmpl.slots.size() << "\n";
    os << "  circuit depth: " << circuit_depth(tmpl) << "\n";

    os << "encoder block (" << encoder.slots.size() << " gates):\n";
    for (const auto &slot : encoder.slots) {
        os << "  " << slot_line(slot) << "\n";
    }
    os << "ansatz layer (" << layer.slots.size() << " gates, "
       << layer.total_params << " params):\n";
    for (const auto &slot : layer.slots) {
        os << "  " << slot_line(slot) << "\n";
    }

    std::map<std::string, int> totals;
    for (const auto &slot : tmpl.slots) {
        ++totals[gate_name(slot.kind)];
    }
    os << "gate totals:";
    for (const auto &[name, count] : totals) {
        os << " " << name << "=" << count;
    }
    os << "\n";

    os << "per-qubit gates:\n";
    for (int q = 0; q < spec.n_qubits; ++q) {
        os << "  q" << q << ":";
        for (const auto &slot : tmpl.slots) {
            if (slot.qubit0 == q ||
                (gate_arity(slot.kind) == 2 && slot.qubit1 == q)) {
                os << " " << gate_name(slot.kind);
            }
        }
        os << "\n";
    }
    return os.str();
}

} // namespace pqcreg
