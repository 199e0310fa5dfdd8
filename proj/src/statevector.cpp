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
#include "pqcdse/statevector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace pqcdse {

namespace {

using Mat2 = std::array<Complex, 4>; // row-major

constexpr double kInvSqrt2 = 0.70710678118654752440;

Mat2 single_qubit_matrix(GateKind kind, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    switch (kind) {
    case GateKind::H:
        return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    case GateKind::RX:
    case GateKind::CRX:
        return {c, Complex(0.0, -s), Complex(0.0, -s), c};
    case GateKind::RY:
        return {c, -s, s, c};
    case GateKind::RZ:
    case GateKind::CRZ:
        return {Complex(c, -s), 0.0, 0.0, Complex(c, s)};
    case GateKind::CX:
        return {0.0, 1.0, 1.0, 0.0};
    case GateKind::CZ:
        return {1.0, 0.0, 0.0, -1.0};
    }
    return {1.0, 0.0, 0.0, 1.0};
}

inline std::size_t bit_of(int n_qubits, int q) { return std::size_t{1} << (n_qubits - 1 - q); }

void apply_matrix(std::span<Complex> amps, std::size_t target_bit, std::size_t control_bit,
                  const Mat2 &m) {
    const std::size_t dim = amps.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & target_bit) != 0 || (i & control_bit) != control_bit) {
            continue;
        }
        const std::size_t j = i | target_bit;
        const Complex a0 = amps[i];
        const Complex a1 = amps[j];
        amps[i] = m[0] * a0 + m[1] * a1;
        amps[j] = m[2] * a0 + m[3] * a1;
    }
}

} // namespace

std::string_view to_string(GateKind k) {
    switch (k) {
    case GateKind::H:
        return "H";
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CX:
        return "CX";
    case GateKind::CZ:
        return "CZ";
    case GateKind::CRX:
        return "CRX";
    case GateKind::CRZ:
        return "CRZ";
    }
    return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
    for (GateKind k : kAllGateKinds) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24) {
        throw std::invalid_argument("StateVector: qubit count out of range");
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("StateVector: amplitude count must be a power of two >= 2");
    }
    double norm2 = 0.0;
    for (const auto &a : amplitudes) {
        norm2 += std::norm(a);
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw std::invalid_argument("StateVector: zero or non-finite norm");
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto &a : amplitudes) {
        a *= inv;
    }
    const int n = std::countr_zero(dim);
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) {
        throw std::invalid_argument("StateVector::basis: index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return acc;
}

void validate_gate(const Gate &gate, int n_qubits, std::optional<double> theta) {
    const int want = arity(gate.kind);
    if (static_cast<int>(gate.qubits.size()) != want) {
        throw std::invalid_argument("gate " + std::string(to_string(gate.kind)) + " expects " +
                                    std::to_string(want) + " qubit(s)");
    }
    for (int q : gate.qubits) {
        if (q < 0 || q >= n_qubits) {
            throw std::invalid_argument("gate " + std::string(to_string(gate.kind)) +
                                        ": qubit index " + std::to_string(q) + " out of range");
        }
    }
    if (want == 2 && gate.qubits[0] == gate.qubits[1]) {
        throw std::invalid_argument("gate " + std::string(to_string(gate.kind)) +
                                    ": control and target coincide");
    }
    if (is_parametrized(gate.kind) != theta.has_value()) {
        throw std::invalid_argument("gate " + std::string(to_string(gate.kind)) +
                                    (theta ? ": unexpected angle" : ": missing angle"));
    }
}

void apply_gate_unchecked(std::span<Complex> amps, int n_qubits, GateKind kind, int q0, int q1,
                          double theta) {
    const Mat2 m = single_qubit_matrix(kind, theta);
    if (arity(kind) == 1) {
        apply_matrix(amps, bit_of(n_qubits, q0), 0, m);
    } else {
        apply_matrix(amps, bit_of(n_qubits, q1), bit_of(n_qubits, q0), m);
    }
}

void apply_gate_inplace(StateVector &state, const Gate &gate, std::optional<double> theta) {
    validate_gate(gate, state.n_qubits(), theta);
    const int q1 = gate.qubits.size() > 1 ? gate.qubits[1] : -1;
    apply_gate_unchecked(state.amplitudes(), state.n_qubits(), gate.kind, gate.qubits[0], q1,
                         theta.value_or(0.0));
}

StateVector apply_gate(StateVector state, const Gate &gate, std::optional<double> theta) {
    apply_gate_inplace(state, gate, theta);
    return state;
}

std::complex<double> inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("inner_product: qubit count mismatch");
    }
    Complex acc{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
}

} // namespace pqcdse
