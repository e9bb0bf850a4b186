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

#include "pqcreg/statevector.hpp"

#include "pqcreg/errors.hpp"

#include <cassert>
#include <cmath>

namespace pqcreg {

namespace {

using Index = std::uint64_t;

constexpr Complex kImag{0.0, 1.0};

/// Widen `value` by one bit, inserting a zero at `pos`.
constexpr Index insert_zero_bit(Index value, int pos) noexcept {
    const Index low = value & ((Index{1} << pos) - 1);
    return ((value >> pos) << (pos + 1)) | low;
}

void check_qubit(int n_qubits, int q) {
    if (q < 0 || q >= n_qubits) {
        throw Error(ErrorKind::InvalidArgument,
                    "qubit index " + std::to_string(q) +
                        " out of range for " + std::to_string(n_qubits) +
                        "-qubit state");
    }
}

void validate_gate(int n_qubits, const GateOp &gate) {
    check_qubit(n_qubits, gate.qubit0);
    if (gate_arity(gate.kind) == 2) {
        check_qubit(n_qubits, gate.qubit1);
        if (gate.qubit0 == gate.qubit1) {
            throw Error(ErrorKind::InvalidArgument,
                        std::string(gate_name(gate.kind)) +
                            " requires two distinct qubits");
        }
    }
    if (gate_has_angle(gate.kind) && !std::isfinite(gate.angle)) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string(gate_name(gate.kind)) +
                        " angle must be finite");
    }
}

/// In-place 2x2 update over the target-bit pairs.
template <typename PairUpdate>
void for_each_pair(std::vector<Complex> &amps, int n_qubits, int target,
                   PairUpdate &&update) {
    const Index mask = Index{1} << target;
    const Index half = Index{1} << (n_qubits - 1);
    for (Index i = 0; i < half; ++i) {
        const Index i0 = insert_zero_bit(i, target);
        update(amps[i0], amps[i0 | mask]);
    }
}

/// Pairs over the target bit restricted to control = 1.
template <typename PairUpdate>
void for_each_controlled_pair(std::vector<Complex> &amps, int n_qubits,
                              int control, int target, PairUpdate &&update) {
    const int lo = control < target ? control : target;
    const int hi = control < target ? target : control;
    const Index cmask = Index{1} << control;
    const Index tmask = Index{1} << target;
    const Index quarter = Index{1} << (n_qubits - 2);
    for (Index i = 0; i < quarter; ++i) {
        const Index base = insert_zero_bit(insert_zero_bit(i, lo), hi);
        const Index i0 = base | cmask;
        update(amps[i0], amps[i0 | tmask]);
    }
}

} // namespace

const char *gate_name(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::RX:
        return "RX";
    case GateKind::H:
        return "H";
    case GateKind::X:
        return "X";
    case GateKind::CNOT:
        return "CNOT";
    case GateKind::CZ:
        return "CZ";
    case GateKind::CRX:
        return "CRX";
    case GateKind::CRZ:
        return "CRZ";
    case GateKind::ZZ:
        return "ZZ";
    }
    return "?";
}

bool gate_has_angle(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::RX:
    case GateKind::CRX:
    case GateKind::CRZ:
    case GateKind::ZZ:
        return true;
    default:
        return false;
    }
}

int gate_arity(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::CRX:
    case GateKind::CRZ:
    case GateKind::ZZ:
        return 2;
    default:
        return 1;
    }
}

StateVector::StateVector(int n_qubits, int max_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > max_qubits) {
        throw Error(ErrorKind::Capacity,
                    "qubit count " + std::to_string(n_qubits) +
                        " outside supported range [1, " +
                        std::to_string(max_qubits) + "]");
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = Complex{1.0, 0.0};
}

double StateVector::norm_sq() const noexcept {
    double total = 0.0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

StateVector new_zero_state(int n_qubits, int max_qubits) {
    return StateVector(n_qubits, max_qubits);
}

void apply_gate(StateVector &state, const GateOp &gate) {
    validate_gate(state.n_qubits(), gate);
    auto &amps = state.amplitudes();
    const int n = state.n_qubits();

    switch (gate.kind) {
    case GateKind::RY: {
        const double c = std::cos(gate.angle / 2);
        const double s = std::sin(gate.angle / 2);
        for_each_pair(amps, n, gate.qubit0, [&](Complex &a0, Complex &a1) {
            const Complex t0 = a0;
            a0 = c * t0 - s * a1;
            a1 = s * t0 + c * a1;
        });
        break;
    }
    case GateKind::RZ: {
        const Complex p0 = std::exp(-kImag * (gate.angle / 2));
        const Complex p1 = std::exp(kImag * (gate.angle / 2));
        for_each_pair(amps, n, gate.qubit0, [&](Complex &a0, Complex &a1) {
            a0 *= p0;
            a1 *= p1;
        });
        break;
    }
    case GateKind::RX: {
        const double c = std::cos(gate.angle / 2);
        const Complex ms = -kImag * std::sin(gate.angle / 2);
        for_each_pair(amps, n, gate.qubit0, [&](Complex &a0, Complex &a1) {
            const Complex t0 = a0;
            a0 = c * t0 + ms * a1;
            a1 = ms * t0 + c * a1;
        });
        break;
    }
    case GateKind::H: {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        for_each_pair(amps, n, gate.qubit0, [&](Complex &a0, Complex &a1) {
            const Complex t0 = a0;
            a0 = inv_sqrt2 * (t0 + a1);
            a1 = inv_sqrt2 * (t0 - a1);
        });
        break;
    }
    case GateKind::X: {
        for_each_pair(amps, n, gate.qubit0,
                      [](Complex &a0, Complex &a1) { std::swap(a0, a1); });
        break;
    }
    case GateKind::CNOT: {
        for_each_controlled_pair(
            amps, n, gate.qubit0, gate.qubit1,
            [](Complex &a0, Complex &a1) { std::swap(a0, a1); });
        break;
    }
    case GateKind::CZ: {
        // Symmetric: phase -1 whenever both bits are set.
        for_each_controlled_pair(amps, n, gate.qubit0, gate.qubit1,
                                 [](Complex &, Complex &a1) { a1 = -a1; });
        break;
    }
    case GateKind::CRX: {
        const double c = std::cos(gate.angle / 2);
        const Complex ms = -kImag * std::sin(gate.angle / 2);
        for_each_controlled_pair(amps, n, gate.qubit0, gate.qubit1,
                                 [&](Complex &a0, Complex &a1) {
                                     const Complex t0 = a0;
                                     a0 = c * t0 + ms * a1;
                                     a1 = ms * t0 + c * a1;
                                 });
        break;
    }
    case GateKind::CRZ: {
        const Complex p0 = std::exp(-kImag * (gate.angle / 2));
        const Complex p1 = std::exp(kImag * (gate.angle / 2));
        for_each_controlled_pair(amps, n, gate.qubit0, gate.qubit1,
                                 [&](Complex &a0, Complex &a1) {
                                     a0 *= p0;
                                     a1 *= p1;
                                 });
        break;
    }
    case GateKind::ZZ: {
        // diag(e^{-ip}, e^{+ip}, e^{+ip}, e^{-ip}) on the two bits.
        const Complex same = std::exp(-kImag * gate.angle);
        const Complex diff = std::exp(kImag * gate.angle);
        const Index m0 = Index{1} << gate.qubit0;
        const Index m1 = Index{1} << gate.qubit1;
        const Index dim = amps.size();
        for (Index i = 0; i < dim; ++i) {
            const bool b0 = (i & m0) != 0;
            const bool b1 = (i & m1) != 0;
            amps[i] *= (b0 == b1) ? same : diff;
        }
        break;
    }
    }
}

void apply_gates(StateVector &state, const std::vector<GateOp> &gates) {
    for (const auto &gate : gates) {
        apply_gate(state, gate);
    }
}

double expectation_z0(const StateVector &state) noexcept {
    assert(std::abs(state.norm_sq() - 1.0) < 1e-9);
    const auto &amps = state.amplitudes();
    double value = 0.0;
    for (std::size_t i = 0; i < amps.size(); i += 2) {
        value += std::norm(amps[i]) - std::norm(amps[i + 1]);
    }
    return value;
}

// --------------------------------------------------------------------------
// Dense verification path.
// --------------------------------------------------------------------------

DenseUnitary::DenseUnitary(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (entries_.size() != dim_ * dim_) {
        throw Error(ErrorKind::InvalidArgument,
                    "dense matrix entry count does not match dimension");
    }
    // Gate-sized matrices are checked eagerly; large tensor expansions are
    // unitary by construction and verified in tests instead.
    if (dim_ <= 4) {
        double defect = 0.0;
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                Complex dot{0.0, 0.0};
                for (std::size_t k = 0; k < dim_; ++k) {
                    dot += std::conj(at(k, r)) * at(k, c);
                }
                const Complex expected =
                    r == c ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                defect = std::max(defect, std::abs(dot - expected));
            }
        }
        if (defect > 1e-10) {
            throw Error(ErrorKind::InvalidArgument,
                        "constructed gate matrix is not unitary");
        }
    }
}

DenseUnitary dense_gate_matrix(GateKind kind, double angle) {
    const Complex i{0.0, 1.0};
    const double h = angle / 2;
    switch (kind) {
    case GateKind::RY:
        return DenseUnitary(
            2, {std::cos(h), -std::sin(h), std::sin(h), std::cos(h)});
    case GateKind::RZ:
        return DenseUnitary(2, {std::exp(-i * h), 0.0, 0.0, std::exp(i * h)});
    case GateKind::RX:
        return DenseUnitary(2, {std::cos(h), -i * std::sin(h),
                                -i * std::sin(h), std::cos(h)});
    case GateKind::H: {
        const double r = 0.70710678118654752440;
        return DenseUnitary(2, {r, r, r, -r});
    }
    case GateKind::X:
        return DenseUnitary(2, {0.0, 1.0, 1.0, 0.0});
    // Two-qubit matrices use the sub-basis index (bit0 = first operand,
    // i.e. the control, bit1 = second operand), matching the global
    // little-endian convention.
    case GateKind::CNOT:
        return DenseUnitary(4, {1, 0, 0, 0, //
                                0, 0, 0, 1, //
                                0, 0, 1, 0, //
                                0, 1, 0, 0});
    case GateKind::CZ:
        return DenseUnitary(4, {1, 0, 0, 0, //
                                0, 1, 0, 0, //
                                0, 0, 1, 0, //
                                0, 0, 0, -1});
    case GateKind::CRX: {
        const Complex c = std::cos(h);
        const Complex s = -i * std::sin(h);
        return DenseUnitary(4, {1, 0, 0, 0, //
                                0, c, 0, s, //
                                0, 0, 1, 0, //
                                0, s, 0, c});
    }
    case GateKind::CRZ:
        return DenseUnitary(4, {1, 0, 0, 0,                //
                                0, std::exp(-i * h), 0, 0, //
                                0, 0, 1, 0,                //
                                0, 0, 0, std::exp(i * h)});
    case GateKind::ZZ: {
        const Complex same = std::exp(-i * angle);
        const Complex diff = std::exp(i * angle);
        return DenseUnitary(4, {same, 0, 0, 0, //
                                0, diff, 0, 0, //
                                0, 0, diff, 0, //
                                0, 0, 0, same});
    }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown gate kind");
}

DenseUnitary dense_full_matrix(int n_qubits, const GateOp &gate) {
    validate_gate(n_qubits, gate);
    const std::size_t dim = std::size_t{1} << n_qubits;
    const DenseUnitary base = dense_gate_matrix(gate.kind, gate.angle);
    std::vector<Complex> full(dim * dim, Complex{0.0, 0.0});

    if (gate_arity(gate.kind) == 1) {
        // I x ... x m x ... x I, placed at the operand qubit.
        const std::size_t mask = std::size_t{1} << gate.qubit0;
        for (std::size_t col = 0; col < dim; ++col) {
            const std::size_t cb = (col & mask) ? 1 : 0;
            for (std::size_t rb = 0; rb < 2; ++rb) {
                const std::size_t row = (col & ~mask) | (rb ? mask : 0);
                full[row * dim + col] = base.at(rb, cb);
            }
        }
    } else {
        const std::size_t m0 = std::size_t{1} << gate.qubit0;
        const std::size_t m1 = std::size_t{1} << gate.qubit1;
        for (std::size_t col = 0; col < dim; ++col) {
            const std::size_t sub_col =
                ((col & m0) ? 1 : 0) | ((col & m1) ? 2 : 0);
            const std::size_t rest = col & ~(m0 | m1);
            for (std::size_t sub_row = 0; sub_row < 4; ++sub_row) {
                const std::size_t row = rest | ((sub_row & 1) ? m0 : 0) |
                                        ((sub_row & 2) ? m1 : 0);
                full[row * dim + col] = base.at(sub_row, sub_col);
            }
        }
    }
    return DenseUnitary(dim, std::move(full));
}

StateVector oracle_apply(int n_qubits, const std::vector<GateOp> &gates) {
    if (n_qubits < 1 || n_qubits > kMaxOracleQubits) {
        throw Error(ErrorKind::Capacity,
                    "dense oracle supports 1 to " +
                        std::to_string(kMaxOracleQubits) + " qubits, got " +
                        std::to_string(n_qubits));
    }
    StateVector state(n_qubits);
    const std::size_t dim = state.size();
    std::vector<Complex> next(dim);
    for (const auto &gate : gates) {
        const DenseUnitary full = dense_full_matrix(n_qubits, gate);
        const auto &amps = state.amplitudes();
        for (std::size_t r = 0; r < dim; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < dim; ++c) {
                acc += full.at(r, c) * amps[c];
            }
            next[r] = acc;
        }
        state.amplitudes().swap(next);
    }
    return state;
}

} // namespace pqcreg
