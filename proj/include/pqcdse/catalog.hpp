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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pqcdse/statevector.hpp"

namespace pqcdse {

enum class Connectivity { None = 0, Linear = 1, Circular = 2, AllToAll = 3 };

std::string_view to_string(Connectivity c);
std::optional<Connectivity> parse_connectivity(std::string_view name);

/// A gate as written in a catalog: the parameter slot is assigned on instantiation.
struct GateRecord {
    GateKind kind = GateKind::H;
    std::vector<int> qubits;
    bool parametrized = false;
};

struct CircuitTemplate {
    std::string id;
    int n_qubits = 0;
    Connectivity connectivity = Connectivity::None;
    std::vector<GateRecord> prologue;
    std::vector<GateRecord> layer_block;
    std::vector<GateRecord> epilogue;
    int layers = 1;

    std::string gate_set_label() const;
};

/// A template expanded to a concrete gate list with parameter slots 0..n_params-1.
struct Circuit {
    std::string id;
    int n_qubits = 0;
    int layers = 1;
    Connectivity connectivity = Connectivity::None;
    std::string gate_set_label;
    std::vector<Gate> gates;
    std::size_t n_params = 0;

    /// "A10-L1" style label.
    std::string instance_id() const;
};

struct ResourceCounts {
    std::size_t n_params = 0;
    std::size_t n_two_qubit = 0;
    std::size_t depth = 0;

    bool operator==(const ResourceCounts &) const = default;
};

class CatalogError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Parses a format_version 1 catalog document (JSON text). Validates every
/// template; throws CatalogError naming the offending circuit.
std::vector<CircuitTemplate> parse_catalog(std::string_view document);
std::vector<CircuitTemplate> load_catalog(const std::filesystem::path &path);

/// The 19-template family shipped with the project.
std::vector<CircuitTemplate> load_default_catalog();

void validate_template(const CircuitTemplate &t);

Circuit instantiate(const CircuitTemplate &t, int layers);
inline Circuit instantiate(const CircuitTemplate &t) { return instantiate(t, t.layers); }

ResourceCounts resource_counts(const Circuit &c);

/// Moment count under as-soon-as-possible scheduling in list order: each gate
/// starts one moment after the latest earlier gate touching any of its qubits.
std::size_t circuit_depth(std::span<const Gate> gates, int n_qubits);

const CircuitTemplate &find_template(std::span<const CircuitTemplate> catalog, std::string_view id);

/// Serializes templates back to the catalog document format.
std::string dump_catalog(std::span<const CircuitTemplate> catalog);

} // namespace pqcdse
