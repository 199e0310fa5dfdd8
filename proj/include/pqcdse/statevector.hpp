// Copyright 2026 The pqcdse Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pqcdse {

using Complex = std::complex<double>;

enum class GateKind : std::uint8_t { H, RX, RY, RZ, CX, CZ, CRX, CRZ };

inline constexpr GateKind kAllGateKinds[] = {GateKind::H,  GateKind::RX, GateKind::RY,
                                             GateKind::RZ, GateKind::CX, GateKind::CZ,
                                             GateKind::CRX, GateKind::CRZ};

constexpr bool is_parametrized(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::CRX ||
           k == GateKind::CRZ;
}

constexpr bool is_controlled_rotation(GateKind k) {
    return k == GateKind::CRX || k == GateKind::CRZ;
}

constexpr int arity(GateKind k) {
    switch (k) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::CRX:
    case GateKind::CRZ:
        return 2;
    default:
        return 1;
    }
}

std::string_view to_string(GateKind k);
std::optional<GateKind> parse_gate_kind(std::string_view name);

/// One gate of a concrete circuit. Two-qubit kinds list qubits as [control, target].
struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> qubits;
    std::optional<std::size_t> param_slot;
};

/// Dense pure state on n qubits. Qubit 0 is the most significant bit of the
/// basis-state index, so |q0 q1 ... q_{n-1}> maps to index sum_q b_q 2^{n-1-q}.
class StateVector {
  public:
    /// |0...0> on n_qubits.
    explicit StateVector(int n_qubits);

    /// Takes ownership of raw amplitudes. Length must be a power of two; the
    /// vector is normalized.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);

    /// Computational basis state |index>.
    static StateVector basis(int n_qubits, std::size_t index);

    int n_qubits() const noexcept { return n_qubits_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const noexcept;

  private:
    StateVector(int n_qubits, std::vector<Complex> amps);

    int n_qubits_;
    std::vector<Complex> amps_;
};

/// Checks qubit indices against the state size and theta against the gate kind.
/// Throws std::invalid_argument on violation.
void validate_gate(const Gate &gate, int n_qubits, std::optional<double> theta);

/// In-place unitary action. Rotations follow R_P(theta) = exp(-i theta P / 2);
/// CRX/CRZ apply that rotation to the target when the control is |1>.
void apply_gate_inplace(StateVector &state, const Gate &gate, std::optional<double> theta = {});

/// Value-returning form of apply_gate_inplace.
StateVector apply_gate(StateVector state, const Gate &gate, std::optional<double> theta = {});

/// |<a|b>|^2 clipped to [0, 1].
double fidelity(const StateVector &a, const StateVector &b);

std::complex<double> inner_product(const StateVector &a, const StateVector &b);

/// Unchecked fast path used by the circuit runner: gate already validated.
void apply_gate_unchecked(std::span<Complex> amps, int n_qubits, GateKind kind, int q0, int q1,
                          double theta);

} // namespace pqcdse
