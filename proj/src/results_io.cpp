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
#include "pqcdse/results_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "pqcdse/rng.hpp"

namespace pqcdse {

using nlohmann::json;

namespace {

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_real(std::string_view s, std::size_t row, std::string_view column) {
    if (s.empty() || s == "nan" || s == "NaN") {
        return kMissing;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw FormatError(fmt::format("row {}: column '{}' is not a number: '{}'", row, column, s));
    }
    return v;
}

template <class Int>
Int parse_int(std::string_view s, std::size_t row, std::string_view column) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw FormatError(fmt::format("row {}: column '{}' is not an integer: '{}'", row, column, s));
    }
    return v;
}

} // namespace

std::string format_real(double v) {
    if (std::isnan(v)) {
        return {};
    }
    return fmt::format("{}", v);
}

std::string results_to_csv(std::span<const MetricRecord> records) {
    std::string out(kResultsHeader);
    out += '\n';
    for (const auto &r : records) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.circuit_id, r.layers,
                           r.n_qubits, r.resources.n_params, r.resources.n_two_qubit,
                           r.resources.depth, format_real(r.dkl), format_real(r.expr_prime),
                           r.hamiltonian_id, format_real(r.trainability), format_real(r.cost),
                           format_real(r.score), r.seed);
    }
    return out;
}

std::vector<MetricRecord> results_from_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            lines.push_back(line);
        }
        start = end + 1;
    }
    if (lines.empty()) {
        throw FormatError("results CSV is empty");
    }
    std::map<std::string_view, std::size_t> col;
    const auto header = split_line(lines[0]);
    for (std::size_t i = 0; i < header.size(); ++i) {
        col[header[i]] = i;
    }
    for (auto name : split_line(kResultsHeader)) {
        if (!col.contains(name)) {
            throw FormatError(fmt::format("results CSV is missing column '{}'", name));
        }
    }
    if (lines.size() < 2) {
        throw FormatError("results CSV has no data rows");
    }
    std::vector<MetricRecord> records;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        const auto cells = split_line(lines[row]);
        if (cells.size() != header.size()) {
            throw FormatError(fmt::format("row {}: expected {} cells, got {}", row, header.size(),
                                          cells.size()));
        }
        const auto get = [&](std::string_view name) { return cells[col.at(name)]; };
        MetricRecord r;
        r.circuit_id = std::string(get("circuit_id"));
        r.layers = parse_int<int>(get("layers"), row, "layers");
        r.n_qubits = parse_int<int>(get("n_qubits"), row, "n_qubits");
        r.resources.n_params = parse_int<std::size_t>(get("n_params"), row, "n_params");
        r.resources.n_two_qubit = parse_int<std::size_t>(get("n_2q"), row, "n_2q");
        r.resources.depth = parse_int<std::size_t>(get("depth"), row, "depth");
        r.dkl = parse_real(get("dkl"), row, "dkl");
        r.expr_prime = parse_real(get("expr_prime"), row, "expr_prime");
        r.hamiltonian_id = std::string(get("hamiltonian"));
        r.trainability = parse_real(get("trainability"), row, "trainability");
        r.cost = parse_real(get("cost"), row, "cost");
        r.score = parse_real(get("score"), row, "score");
        r.seed = parse_int<std::uint64_t>(get("seed"), row, "seed");
        records.push_back(std::move(r));
    }
    return records;
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view contents) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string checksum_hex(std::string_view bytes) {
    return fmt::format("fnv1a64:{:016x}", fnv1a64(bytes));
}

json normalization_to_json(const NormalizationContext &ctx) {
    const auto b = [](Bounds x) { return json{{"min", x.min}, {"max", x.max}}; };
    return {{"n_params", b(ctx.n_params)}, {"depth", b(ctx.depth)}, {"n_2q", b(ctx.n_two_qubit)}};
}

NormalizationContext normalization_from_json(const json &j) {
    const auto b = [](const json &x) {
        return Bounds{x.at("min").get<double>(), x.at("max").get<double>()};
    };
    return {b(j.at("n_params")), b(j.at("depth")), b(j.at("n_2q"))};
}

json record_to_json(const MetricRecord &r) {
    const auto real = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
    return {{"instance_id", r.instance_id()},
            {"circuit_id", r.circuit_id},
            {"layers", r.layers},
            {"n_params", r.resources.n_params},
            {"n_2q", r.resources.n_two_qubit},
            {"depth", r.resources.depth},
            {"expr_prime", real(r.expr_prime)},
            {"trainability", real(r.trainability)},
            {"cost", real(r.cost)},
            {"score", real(r.score)}};
}

std::string dump_json(const json &j) { return j.dump(2) + "\n"; }

} // namespace pqcdse
