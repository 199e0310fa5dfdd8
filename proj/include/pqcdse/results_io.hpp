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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pqcdse/pareto.hpp"

namespace pqcdse {

inline constexpr std::string_view kResultsHeader =
    "circuit_id,layers,n_qubits,n_params,n_2q,depth,dkl,expr_prime,hamiltonian,trainability,cost,"
    "score,seed";

class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal; empty for missing values.
std::string format_real(double v);

/// One header line plus one line per record, '\n' terminated.
std::string results_to_csv(std::span<const MetricRecord> records);

/// Columns may appear in any order; extra columns are ignored. Throws
/// FormatError on a missing column, a malformed value, or no data rows.
std::vector<MetricRecord> results_from_csv(std::string_view text);

std::string read_text_file(const std::filesystem::path &path);

/// Writes through a temporary sibling and renames it into place.
void write_text_file(const std::filesystem::path &path, std::string_view contents);

std::string checksum_hex(std::string_view bytes);

nlohmann::json normalization_to_json(const NormalizationContext &ctx);
NormalizationContext normalization_from_json(const nlohmann::json &j);

/// Compact records for fronts and tables.
nlohmann::json record_to_json(const MetricRecord &r);

/// Deterministic JSON text (sorted keys, two-space indent, trailing newline).
std::string dump_json(const nlohmann::json &j);

} // namespace pqcdse
