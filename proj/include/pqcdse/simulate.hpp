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

#include <span>

#include "pqcdse/catalog.hpp"
#include "pqcdse/statevector.hpp"

namespace pqcdse {

/// U(theta)|0...0> for an instantiated circuit. Throws std::invalid_argument
/// when theta.size() differs from the circuit's parameter count.
StateVector run_circuit(const Circuit &circuit, std::span<const double> theta);

/// Same, writing into an existing state of the right size (reset to |0...0>).
void run_circuit_into(const Circuit &circuit, std::span<const double> theta, StateVector &out);

/// Continues simulation from gate `first` onward, starting from `state`.
void run_gates_from(const Circuit &circuit, std::size_t first, std::span<const double> theta,
                    StateVector &state);

} // namespace pqcdse
