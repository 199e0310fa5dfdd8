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
#include "pqcdse/simulate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pqcdse {

void run_gates_from(const Circuit &circuit, std::size_t first, std::span<const double> theta,
                    StateVector &state) {
    const auto amps = state.amplitudes();
    for (std::size_t k = first; k < circuit.gates.size(); ++k) {
        const Gate &g = circuit.gates[k];
        const double angle = g.param_slot ? theta[*g.param_slot] : 0.0;
        const int q1 = g.qubits.size() > 1 ? g.qubits[1] : -1;
        apply_gate_unchecked(amps, circuit.n_qubits, g.kind, g.qubits[0], q1, angle);
    }
}

void run_circuit_into(const Circuit &circuit, std::span<const double> theta, StateVector &out) {
    if (theta.size() != circuit.n_params) {
        throw std::invalid_argument("run_circuit: " + circuit.instance_id() + " expects " +
                                    std::to_string(circuit.n_params) + " parameters, got " +
                                    std::to_string(theta.size()));
    }
    if (out.n_qubits() != circuit.n_qubits) {
        out = StateVector(circuit.n_qubits);
    } else {
        auto amps = out.amplitudes();
        std::fill(amps.begin(), amps.end(), Complex{});
        amps[0] = 1.0;
    }
    run_gates_from(circuit, 0, theta, out);
}

StateVector run_circuit(const Circuit &circuit, std::span<const double> theta) {
    StateVector s(circuit.n_qubits);
    run_circuit_into(circuit, theta, s);
    return s;
}

} // namespace pqcdse
