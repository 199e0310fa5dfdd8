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
#include "pqcdse/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pqcdse {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

bool edge_allowed(Connectivity c, int a, int b, int n) {
    const int d = std::abs(a - b);
    switch (c) {
    case Connectivity::None:
        return false;
    case Connectivity::Linear:
        return d == 1;
    case Connectivity::Circular:
        return d == 1 || d == n - 1;
    case Connectivity::AllToAll:
        return true;
    }
    return false;
}

GateRecord parse_gate(const json &j, const std::string &where) {
    if (!j.is_object()) {
        throw CatalogError(where + ": gate record must be an object");
    }
    GateRecord g;
    const auto kind_name = j.at("kind").get<std::string>();
    const auto kind = parse_gate_kind(kind_name);
    if (!kind) {
        throw CatalogError(where + ": unknown gate kind '" + kind_name + "'");
    }
    g.kind = *kind;
    g.qubits = j.at("qubits").get<std::vector<int>>();
    if (!j.contains("parametrized") || !j.at("parametrized").is_boolean()) {
        throw CatalogError(where + ": gate record needs boolean 'parametrized'");
    }
    g.parametrized = j.at("parametrized").get<bool>();
    return g;
}

std::vector<GateRecord> parse_block(const json &entry, const char *key, const std::string &id) {
    std::vector<GateRecord> out;
    if (!entry.contains(key)) {
        return out;
    }
    const json &arr = entry.at(key);
    if (!arr.is_array()) {
        throw CatalogError(id + ": '" + key + "' must be a list");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(parse_gate(arr[i], id + "." + key + "[" + std::to_string(i) + "]"));
    }
    return out;
}

json dump_block(const std::vector<GateRecord> &block) {
    json arr = json::array();
    for (const auto &g : block) {
        arr.push_back({{"kind", to_string(g.kind)}, {"qubits", g.qubits}, {"parametrized", g.parametrized}});
    }
    return arr;
}

void append_block(Circuit &c, const std::vector<GateRecord> &block) {
    for (const auto &r : block) {
        Gate g{r.kind, r.qubits, std::nullopt};
        if (r.parametrized) {
            g.param_slot = c.n_params++;
        }
        c.gates.push_back(std::move(g));
    }
}

} // namespace

std::string_view to_string(Connectivity c) {
    switch (c) {
    case Connectivity::None:
        return "none";
    case Connectivity::Linear:
        return "linear";
    case Connectivity::Circular:
        return "circular";
    case Connectivity::AllToAll:
        return "all_to_all";
    }
    return "?";
}

std::optional<Connectivity> parse_connectivity(std::string_view name) {
    for (auto c : {Connectivity::None, Connectivity::Linear, Connectivity::Circular,
                   Connectivity::AllToAll}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::string CircuitTemplate::gate_set_label() const {
    std::set<GateKind> kinds;
    for (const auto *block : {&prologue, &layer_block, &epilogue}) {
        for (const auto &g : *block) {
            if (is_parametrized(g.kind) || arity(g.kind) == 2) {
                kinds.insert(g.kind);
            }
        }
    }
    std::string label;
    for (GateKind k : kinds) {
        if (!label.empty()) {
            label += '+';
        }
        label += to_string(k);
    }
    return label.empty() ? std::string("none") : label;
}

std::string Circuit::instance_id() const { return id + "-L" + std::to_string(layers); }

void validate_template(const CircuitTemplate &t) {
    if (t.id.empty()) {
        throw CatalogError("template with empty id");
    }
    if (t.n_qubits < 1 || t.n_qubits > 16) {
        throw CatalogError(t.id + ": n_qubits out of range");
    }
    if (t.layers < 1) {
        throw CatalogError(t.id + ": layers must be >= 1");
    }
    for (const auto *block : {&t.prologue, &t.layer_block, &t.epilogue}) {
        for (const auto &g : *block) {
            const std::string where = t.id + " gate " + std::string(to_string(g.kind));
            if (static_cast<int>(g.qubits.size()) != arity(g.kind)) {
                throw CatalogError(where + ": wrong number of qubits");
            }
            for (int q : g.qubits) {
                if (q < 0 || q >= t.n_qubits) {
                    throw CatalogError(where + ": qubit index out of range");
                }
            }
            if (g.parametrized != is_parametrized(g.kind)) {
                throw CatalogError(where + ": malformed parameter declaration (parametrized=" +
                                   (g.parametrized ? "true" : "false") + ")");
            }
            if (arity(g.kind) == 2) {
                if (g.qubits[0] == g.qubits[1]) {
                    throw CatalogError(where + ": control equals target");
                }
                if (!edge_allowed(t.connectivity, g.qubits[0], g.qubits[1], t.n_qubits)) {
                    throw CatalogError(where + " on (" + std::to_string(g.qubits[0]) + "," +
                                       std::to_string(g.qubits[1]) +
                                       ") violates connectivity " +
                                       std::string(to_string(t.connectivity)));
                }
            }
        }
    }
}

std::vector<CircuitTemplate> parse_catalog(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error &e) {
        throw CatalogError(std::string("catalog is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("format_version")) {
        throw CatalogError("catalog: missing format_version");
    }
    if (doc.at("format_version") != kFormatVersion) {
        throw CatalogError("catalog: unsupported format_version " + doc.at("format_version").dump());
    }
    if (!doc.contains("circuits") || !doc.at("circuits").is_array()) {
        throw CatalogError("catalog: 'circuits' must be a list");
    }

    std::vector<CircuitTemplate> out;
    std::set<std::string> seen;
    for (const auto &entry : doc.at("circuits")) {
        CircuitTemplate t;
        try {
            t.id = entry.at("id").get<std::string>();
            t.n_qubits = entry.at("n_qubits").get<int>();
            const auto conn = entry.at("connectivity").get<std::string>();
            const auto parsed = parse_connectivity(conn);
            if (!parsed) {
                throw CatalogError(t.id + ": unknown connectivity '" + conn + "'");
            }
            t.connectivity = *parsed;
            t.layers = entry.value("layers", 1);
            t.prologue = parse_block(entry, "prologue", t.id);
            t.layer_block = parse_block(entry, "layer_block", t.id);
            t.epilogue = parse_block(entry, "epilogue", t.id);
        } catch (const json::exception &e) {
            throw CatalogError("catalog entry '" + t.id + "': " + e.what());
        }
        if (!seen.insert(t.id).second) {
            throw CatalogError("catalog: duplicate id '" + t.id + "'");
        }
        validate_template(t);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<CircuitTemplate> load_catalog(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw CatalogError("cannot open catalog " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str());
}

std::vector<CircuitTemplate> load_default_catalog() { return load_catalog(PQCDSE_DEFAULT_CATALOG); }

std::string dump_catalog(std::span<const CircuitTemplate> catalog) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["circuits"] = json::array();
    for (const auto &t : catalog) {
        json e;
        e["id"] = t.id;
        e["n_qubits"] = t.n_qubits;
        e["connectivity"] = to_string(t.connectivity);
        if (!t.prologue.empty()) {
            e["prologue"] = dump_block(t.prologue);
        }
        e["layer_block"] = dump_block(t.layer_block);
        if (!t.epilogue.empty()) {
            e["epilogue"] = dump_block(t.epilogue);
        }
        doc["circuits"].push_back(std::move(e));
    }
    return doc.dump(2);
}

const CircuitTemplate &find_template(std::span<const CircuitTemplate> catalog, std::string_view id) {
    const auto it = std::find_if(catalog.begin(), catalog.end(),
                                 [&](const CircuitTemplate &t) { return t.id == id; });
    if (it == catalog.end()) {
        throw CatalogError("no template with id '" + std::string(id) + "'");
    }
    return *it;
}

Circuit instantiate(const CircuitTemplate &t, int layers) {
    if (layers < 1) {
        throw std::invalid_argument("instantiate: layers must be >= 1");
    }
    Circuit c;
    c.id = t.id;
    c.n_qubits = t.n_qubits;
    c.layers = layers;
    c.connectivity = t.connectivity;
    c.gate_set_label = t.gate_set_label();
    append_block(c, t.prologue);
    for (int l = 0; l < layers; ++l) {
        append_block(c, t.layer_block);
    }
    append_block(c, t.epilogue);
    return c;
}

std::size_t circuit_depth(std::span<const Gate> gates, int n_qubits) {
    std::vector<std::size_t> busy(static_cast<std::size_t>(n_qubits), 0);
    std::size_t depth = 0;
    for (const auto &g : gates) {
        std::size_t moment = 0;
        for (int q : g.qubits) {
            moment = std::max(moment, busy[static_cast<std::size_t>(q)]);
        }
        ++moment;
        for (int q : g.qubits) {
            busy[static_cast<std::size_t>(q)] = moment;
        }
        depth = std::max(depth, moment);
    }
    return depth;
}

ResourceCounts resource_counts(const Circuit &c) {
    ResourceCounts r;
    r.n_params = c.n_params;
    r.n_two_qubit = static_cast<std::size_t>(
        std::count_if(c.gates.begin(), c.gates.end(), [](const Gate &g) { return arity(g.kind) == 2; }));
    r.depth = circuit_depth(c.gates, c.n_qubits);
    return r;
}

} // namespace pqcdse
