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
#include "pqcdse/observables.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace pqcdse {

namespace {

std::string single_site(int n, int q, char p) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(q)] = p;
    return s;
}

std::string two_site(int n, int q, char p) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(q)] = p;
    s[static_cast<std::size_t>(q + 1)] = p;
    return s;
}

} // namespace

Observable::Observable(int n_qubits, std::vector<PauliTerm> terms) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24) {
        throw std::invalid_argument("Observable: qubit count out of range");
    }
    for (auto &t : terms) {
        if (static_cast<int>(t.paulis.size()) != n_qubits) {
            throw std::invalid_argument("Observable: Pauli string '" + t.paulis +
                                        "' has wrong length");
        }
        for (char c : t.paulis) {
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw std::invalid_argument("Observable: bad Pauli letter in '" + t.paulis + "'");
            }
        }
        bool merged = false;
        for (auto &existing : terms_) {
            if (existing.paulis == t.paulis) {
                existing.weight += t.weight;
                merged = true;
                break;
            }
        }
        if (!merged) {
            terms_.push_back(std::move(t));
        }
    }
    for (const auto &t : terms_) {
        CompiledTerm c{t.weight, 0, 0, 0};
        for (int q = 0; q < n_qubits; ++q) {
            const std::uint64_t bit = std::uint64_t{1} << (n_qubits - 1 - q);
            switch (t.paulis[static_cast<std::size_t>(q)]) {
            case 'X':
                c.flip |= bit;
                break;
            case 'Y':
                c.flip |= bit;
                c.phase |= bit;
                ++c.n_y;
                break;
            case 'Z':
                c.phase |= bit;
                break;
            default:
                break;
            }
        }
        compiled_.push_back(c);
    }
}

double Observable::weight_norm() const noexcept {
    double acc = 0.0;
    for (const auto &t : terms_) {
        acc += std::abs(t.weight);
    }
    return acc;
}

Observable tfim(int n, double J, double h) {
    if (n < 2) {
        throw std::invalid_argument("tfim: need at least 2 qubits");
    }
    std::vector<PauliTerm> terms;
    for (int i = 0; i + 1 < n; ++i) {
        terms.push_back({-J, two_site(n, i, 'Z')});
    }
    if (h != 0.0) {
        for (int i = 0; i < n; ++i) {
            terms.push_back({-h, single_site(n, i, 'X')});
        }
    }
    return Observable(n, std::move(terms));
}

Observable heisenberg(int n) {
    if (n < 2) {
        throw std::invalid_argument("heisenberg: need at least 2 qubits");
    }
    std::vector<PauliTerm> terms;
    for (int i = 0; i + 1 < n; ++i) {
        for (char p : {'X', 'Y', 'Z'}) {
            terms.push_back({1.0, two_site(n, i, p)});
        }
    }
    return Observable(n, std::move(terms));
}

Observable local_x(int n) {
    std::vector<PauliTerm> terms;
    for (int i = 0; i < n; ++i) {
        terms.push_back({1.0, single_site(n, i, 'X')});
    }
    return Observable(n, std::move(terms));
}

bool is_known_hamiltonian(std::string_view selector) {
    return selector == "tfim" || selector == "heisenberg" || selector == "localx";
}

Observable make_hamiltonian(std::string_view selector, int n_qubits) {
    if (selector == "tfim") {
        return tfim(n_qubits, 1.0, 1.0);
    }
    if (selector == "heisenberg") {
        return heisenberg(n_qubits);
    }
    if (selector == "localx") {
        return local_x(n_qubits);
    }
    throw std::invalid_argument("unknown hamiltonian '" + std::string(selector) +
                                "' (expected tfim|heisenberg|localx)");
}

Complex expectation_complex(const StateVector &state, const Observable &obs) {
    if (state.n_qubits() != obs.n_qubits()) {
        throw std::invalid_argument("expectation: qubit count mismatch");
    }
    // P|i> = i^{n_y} (-1)^{popcount(i & phase)} |i ^ flip>
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const auto psi = state.amplitudes();
    Complex total{};
    for (const auto &t : obs.compiled()) {
        Complex acc{};
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const Complex v = std::conj(psi[i ^ t.flip]) * psi[i];
            acc += (std::popcount(i & t.phase) & 1) ? -v : v;
        }
        total += t.weight * kIPow[t.n_y & 3] * acc;
    }
    return total;
}

double expectation(const StateVector &state, const Observable &obs) {
    return expectation_complex(state, obs).real();
}

} // namespace pqcdse
