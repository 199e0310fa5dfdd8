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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pqcdse/statevector.hpp"

namespace pqcdse {

struct PauliTerm {
    double weight = 0.0;
    std::string paulis; // one letter of I/X/Y/Z per qubit, qubit 0 first
};

/// Real-weighted sum of Pauli strings. Terms with identical strings are merged
/// on construction and their order is preserved by first appearance.
class Observable {
  public:
    Observable(int n_qubits, std::vector<PauliTerm> terms);

    int n_qubits() const noexcept { return n_qubits_; }
    const std::vector<PauliTerm> &terms() const noexcept { return terms_; }

    /// Sum of |w_t|, the bound on any expectation value.
    double weight_norm() const noexcept;

    struct CompiledTerm {
        double weight;
        std::uint64_t flip;  // X or Y positions
        std::uint64_t phase; // Y or Z positions
        int n_y;
    };
    const std::vector<CompiledTerm> &compiled() const noexcept { return compiled_; }

  private:
    int n_qubits_;
    std::vector<PauliTerm> terms_;
    std::vector<CompiledTerm> compiled_;
};

/// -J sum_i Z_i Z_{i+1} - h sum_i X_i, open boundary.
Observable tfim(int n, double J, double h);
/// sum_i (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}), open boundary.
Observable heisenberg(int n);
/// sum_i X_i.
Observable local_x(int n);

/// Builds an observable from a CLI selector: tfim | heisenberg | localx.
/// TFIM uses J = h = 1. Throws std::invalid_argument for unknown names.
Observable make_hamiltonian(std::string_view selector, int n_qubits);
bool is_known_hamiltonian(std::string_view selector);

/// <psi|O|psi> without the real projection. Imaginary part is rounding residue.
Complex expectation_complex(const StateVector &state, const Observable &obs);
double expectation(const StateVector &state, const Observable &obs);

} // namespace pqcdse
