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

/**
 * @file
 * Circuit construction: feature-map encoders, variational ansatz layouts,
 * and their composition into a full parametrized circuit template.
 *
 * A template is an ordered list of gate slots. Fixed slots carry their
 * angle (or none); feature slots reference a feature index plus a
 * transform; trainable slots reference a parameter index. Binding a
 * parameter vector and a feature vector turns the template into a
 * concrete gate program for the statevector engine.
 */

#pragma once

#include "pqcreg/statevector.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pqcreg {

/// Depth knobs are validated against this ceiling.
inline constexpr int kMaxDepthKnob = 64;

enum class SubEncoder { A1, A2, M, IQP };

/// One of the 14 encoder identifiers. Single-layer encoders are A1, A2,
/// M, IQP; two-layer encoders combine two of {A1, A2, M} with a CNOT or
/// CZ entangling chain (IQP is never part of a two-layer composition).
struct EncoderSpec {
    std::string name;
    SubEncoder layer1{SubEncoder::A1};
    bool two_layer{false};
    SubEncoder layer2{SubEncoder::A1}; // meaningful when two_layer
    GateKind entangler{GateKind::CNOT}; // meaningful when two_layer

    /// Parse a canonical name, e.g. "A2" or "M-A1-CNOT". Throws a config
    /// error listing the legal names on failure.
    static EncoderSpec parse(std::string_view name);
};

/// The closed set of 14 canonical encoder names.
const std::vector<std::string> &encoder_names();

enum class AnsatzKind {
    ModifiedPauliCRZ,
    ModifiedPauliCRX,
    EfficientCRZ,
    EfficientCRX,
    HweCnot,
    HweCz,
    Esu2,
    FullPauliCRZ,
    FullPauliCRX,
    Hadamard,
    FullCRZ,
    FullCRX,
};

struct AnsatzSpec {
    std::string name;
    AnsatzKind kind{AnsatzKind::HweCnot};

    static AnsatzSpec parse(std::string_view name);
};

/// The closed set of 12 canonical ansatz names.
const std::vector<std::string> &ansatz_names();

/// Full circuit identity.
struct CircuitSpec {
    int n_qubits{1};
    EncoderSpec encoder;
    AnsatzSpec ansatz;
    int rud{1};          // re-upload depth k
    int ansatz_layers{1}; // v
    int redundancy{1};    // qubits per feature

    /// Checks ranges and divisibility (n_qubits = redundancy * features).
    void validate() const;
};

enum class FeatureTransform {
    Raw,        // angle = x[i]
    ArcsinSq,   // angle = arcsin(x[i]^2)
    ArccosSq,   // angle = arccos(x[i]^2)
    ProductPair // angle = x[i] * x[j]
};

struct Slot {
    enum class Binding { Fixed, Feature, Param };

    GateKind kind{GateKind::RY};
    int qubit0{0};
    int qubit1{0};
    Binding binding{Binding::Fixed};
    double fixed_angle{0.0};
    FeatureTransform transform{FeatureTransform::Raw};
    int feature0{0};
    int feature1{0}; // second operand for ProductPair
    int param{0};
};

/// Compiled circuit: immutable after assembly, shareable across threads.
struct CircuitTemplate {
    int n_qubits{1};
    int n_features{1};
    int total_params{0};
    std::vector<Slot> slots;

    /// Resolve every slot into a concrete gate. Validates arity and the
    /// arcsin/arccos feature domain (|x| <= 1 for M-family slots).
    [[nodiscard]] std::vector<GateOp> bind(std::span<const double> theta,
                                           std::span<const double> x) const;
};

/// Encoder gate fragment (no trainable slots). With redundancy r, feature
/// i drives qubits r*i .. r*i+r-1 identically; n_qubits must be divisible
/// by r.
[[nodiscard]] CircuitTemplate build_encoder(const EncoderSpec &enc,
                                            int n_qubits, int redundancy = 1);

/// One ansatz layer with fresh parameter slots 0..P-1.
[[nodiscard]] CircuitTemplate ansatz_layout(const AnsatzSpec &ans,
                                            int n_qubits);

/// Per-layer trainable parameter count P(name, n).
[[nodiscard]] int ansatz_param_count(AnsatzKind kind, int n_qubits);

/// k repetitions of [encoder ; v ansatz layers], fresh parameters per
/// layer; total_params = k * v * P(ansatz, n).
[[nodiscard]] CircuitTemplate assemble_pqc(const CircuitSpec &spec);

/// Bind, simulate from |0...0>, and return <Z_0> in [-1, 1].
[[nodiscard]] double evaluate(const CircuitTemplate &tmpl,
                              std::span<const double> theta,
                              std::span<const double> x);

/// Human-readable report: gate listing, counts, depth, parameter count.
[[nodiscard]] std::string describe_circuit(const CircuitSpec &spec);

} // namespace pqcreg
