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
 * Dense statevector simulation core.
 *
 * Conventions (fixed project-wide):
 *  - qubit 0 is the least-significant bit of the basis-state index,
 *  - amplitudes are double-precision complex, length 2^n,
 *  - all gates preserve the norm; there is no measurement collapse.
 *
 * Two evaluation paths exist on purpose. apply_gate() updates amplitudes
 * in place with bit-masked index arithmetic; oracle_apply() builds every
 * gate as a full 2^n x 2^n matrix from identity tensor products and
 * multiplies it onto the state. The two paths share no numerical code and
 * cross-check each other in the test suite.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pqcreg {

using Complex = std::complex<double>;

/// Hard ceiling for the in-place simulator (2^24 amplitudes = 256 MiB).
inline constexpr int kMaxQubits = 24;

/// Ceiling for the dense verification path (2^10 x 2^10 matrices).
inline constexpr int kMaxOracleQubits = 10;

enum class GateKind {
    RY,
    RZ,
    RX,
    H,
    X,
    CNOT,
    CZ,
    CRX,
    CRZ,
    ZZ,
};

[[nodiscard]] const char *gate_name(GateKind kind) noexcept;

/// True for kinds that carry exactly one rotation angle.
[[nodiscard]] bool gate_has_angle(GateKind kind) noexcept;

/// 1 or 2 qubit operands. Two-qubit ordering: control first for
/// CNOT/CRX/CRZ; CZ and ZZ are symmetric but keep their given order.
[[nodiscard]] int gate_arity(GateKind kind) noexcept;

/// One concrete gate application. `angle` is ignored for fixed kinds.
struct GateOp {
    GateKind kind{GateKind::RY};
    int qubit0{0};
    int qubit1{0}; // unused for single-qubit kinds
    double angle{0.0};

    static GateOp single(GateKind kind, int qubit, double angle = 0.0) {
        return GateOp{kind, qubit, 0, angle};
    }
    static GateOp two(GateKind kind, int control, int target,
                      double angle = 0.0) {
        return GateOp{kind, control, target, angle};
    }
};

/// Working quantum state: 2^n complex amplitudes, qubit 0 = index LSB.
class StateVector {
  public:
    /// |0...0>: amplitude 1 at index 0. Throws a capacity error unless
    /// 1 <= n_qubits <= max_qubits.
    explicit StateVector(int n_qubits, int max_qubits = kMaxQubits);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }

    [[nodiscard]] const std::vector<Complex> &amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] std::vector<Complex> &amplitudes() noexcept { return amps_; }

    /// Sum of |a_i|^2; 1 within 1e-12 after any gate sequence.
    [[nodiscard]] double norm_sq() const noexcept;

  private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

/// Convenience factory matching the capacity contract above.
[[nodiscard]] StateVector new_zero_state(int n_qubits,
                                         int max_qubits = kMaxQubits);

/// Apply one gate in place. Validates qubit indices against the state and
/// rejects non-finite angles.
void apply_gate(StateVector &state, const GateOp &gate);

/// Apply a whole program in order.
void apply_gates(StateVector &state, const std::vector<GateOp> &gates);

/// <Z_0> = sum_i (+1 if bit0(i)=0 else -1) |a_i|^2, in [-1, 1].
[[nodiscard]] double expectation_z0(const StateVector &state) noexcept;

/// Dense row-major complex matrix. Unitarity (U^dag U = I within 1e-10)
/// is enforced at construction for gate-sized matrices.
class DenseUnitary {
  public:
    DenseUnitary(std::size_t dim, std::vector<Complex> entries);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const Complex &at(std::size_t row,
                                    std::size_t col) const noexcept {
        return entries_[row * dim_ + col];
    }
    [[nodiscard]] const std::vector<Complex> &entries() const noexcept {
        return entries_;
    }

  private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

/// The 2x2 or 4x4 base matrix for a gate kind at a given angle. This is
/// the oracle's own gate table; apply_gate() does not call it.
[[nodiscard]] DenseUnitary dense_gate_matrix(GateKind kind, double angle);

/// Expand `gate` to the full 2^n-dimensional operator by tensoring with
/// identities (and index permutation for arbitrary qubit placement).
[[nodiscard]] DenseUnitary dense_full_matrix(int n_qubits, const GateOp &gate);

/// Reference evaluation: multiply every gate's full matrix onto |0...0>.
/// Limited to n_qubits <= kMaxOracleQubits.
[[nodiscard]] StateVector oracle_apply(int n_qubits,
                                       const std::vector<GateOp> &gates);

} // namespace pqcreg
