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
#include "pqcdse/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <omp.h>

#include "pqcdse/expressibility.hpp"
#include "pqcdse/observables.hpp"
#include "pqcdse/results_io.hpp"
#include "pqcdse/rng.hpp"
#include "pqcdse/trainability.hpp"

namespace pqcdse {

using nlohmann::json;
namespace fs = std::filesystem;

void RunConfig::validate() const {
    if (hamiltonians.empty()) {
        throw UsageError("at least one hamiltonian is required");
    }
    for (const auto &h : hamiltonians) {
        if (!is_known_hamiltonian(h)) {
            throw UsageError("unknown hamiltonian '" + h + "' (expected tfim|heisenberg|localx)");
        }
    }
    if (qubits < 2 || qubits > 24) {
        throw UsageError("--qubits must be in [2, 24]");
    }
    if (layers.empty()) {
        throw UsageError("--layers must list at least one layer count");
    }
    for (int l : layers) {
        if (l < 1) {
            throw UsageError("--layers entries must be positive");
        }
    }
    if (n_pairs == 0 || n_bins == 0) {
        throw UsageError("--pairs and --bins must be positive");
    }
    if (n_samples < 2) {
        throw UsageError("--grad-samples must be at least 2");
    }
    try {
        weights.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    for (double c : constraints) {
        if (!(c >= 0.0 && c <= 1.0)) {
            throw UsageError("--constraint values must lie in [0, 1]");
        }
    }
    if (threads < 0) {
        throw UsageError("--threads must be >= 0");
    }
}

InstanceSeeds instance_seeds(std::uint64_t master_seed, std::string_view circuit_id, int layers) {
    return {job_seed(master_seed, circuit_id, layers, "expressibility"),
            job_seed(master_seed, circuit_id, layers, "trainability")};
}

NormalizationContext population_context(std::span<const CircuitTemplate> catalog,
                                        std::span<const int> layers) {
    std::vector<ResourceCounts> pop;
    for (const auto &t : catalog) {
        for (int l : layers) {
            pop.push_back(resource_counts(instantiate(t, l)));
        }
    }
    return NormalizationContext::from_resources(pop);
}

std::vector<MetricRecord> evaluate_catalog(std::span<const CircuitTemplate> catalog,
                                           const RunConfig &cfg, const LogSink &log,
                                           std::vector<MetricRecord> *completed) {
    std::vector<CircuitTemplate> sorted(catalog.begin(), catalog.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto &a, const auto &b) { return a.id < b.id; });
    std::vector<int> layers = cfg.layers;
    std::sort(layers.begin(), layers.end());
    layers.erase(std::unique(layers.begin(), layers.end()), layers.end());

    const auto ctx = population_context(sorted, layers);
    std::vector<Observable> observables;
    for (const auto &h : cfg.hamiltonians) {
        observables.push_back(make_hamiltonian(h, cfg.qubits));
    }

    std::vector<MetricRecord> records;
    const std::size_t total = sorted.size() * layers.size();
    std::size_t done = 0;
    for (const auto &t : sorted) {
        for (int l : layers) {
            const Circuit c = instantiate(t, l);
            const auto seeds = instance_seeds(cfg.seed, t.id, l);
            const auto ex = expressibility(c, cfg.n_pairs, cfg.n_bins, seeds.expressibility);
            for (std::size_t h = 0; h < observables.size(); ++h) {
                MetricRecord r;
                r.circuit_id = t.id;
                r.layers = l;
                r.n_qubits = c.n_qubits;
                r.resources = resource_counts(c);
                r.dkl = ex.dkl;
                r.expr_prime = ex.expr_prime;
                r.hamiltonian_id = cfg.hamiltonians[h];
                r.trainability =
                    c.n_params == 0
                        ? kMissing
                        : trainability(c, observables[h], cfg.n_samples, seeds.trainability)
                              .mean_variance;
                r.cost = cost(r.resources, ctx, cfg.weights);
                r.score = std::isnan(r.trainability) ? kMissing : score(r);
                r.seed = cfg.seed;
                if (completed != nullptr) {
                    completed->push_back(r);
                }
                records.push_back(std::move(r));
            }
            ++done;
            if (log) {
                std::string line = fmt::format("[{}/{}] {}-L{} expr'={:.4f}", done, total, t.id, l,
                                               ex.expr_prime);
                for (std::size_t h = 0; h < observables.size(); ++h) {
                    const auto &r = records[records.size() - observables.size() + h];
                    line += fmt::format(" train({})={:.4f}", r.hamiltonian_id, r.trainability);
                }
                log(line);
            }
        }
    }
    return records;
}

std::string objective_label(const Objective &o) {
    return fmt::format("{}:{}", to_string(o.field),
                       o.direction == Direction::Maximize ? "max" : "min");
}

std::vector<LabelledFront> expr_train_fronts(std::span<const MetricRecord> records,
                                             std::span<const double> constraints) {
    const std::vector<Objective> obj{{Field::ExprPrime, Direction::Maximize},
                                     {Field::Trainability, Direction::Maximize}};
    std::vector<LabelledFront> out;
    out.push_back({"unconstrained", obj, kMissing, pareto_front(records, obj)});
    for (double c : constraints) {
        out.push_back({"cost_le_" + format_real(c), obj, c,
                       pareto_front(records, obj, cost_at_most(c))});
    }
    return out;
}

std::vector<LabelledFront> expr_cost_fronts(std::span<const MetricRecord> records) {
    std::vector<LabelledFront> out;
    for (Field f : {Field::NParams, Field::NTwoQubit, Field::Depth}) {
        const std::vector<Objective> obj{{f, Direction::Minimize},
                                         {Field::ExprPrime, Direction::Maximize}};
        out.push_back({std::string(to_string(f)), obj, kMissing, pareto_front(records, obj)});
    }
    return out;
}

std::vector<RedundancyRow> redundancy_ranking(std::span<const MetricRecord> records) {
    const std::vector<Objective> obj{{Field::NParams, Direction::Minimize},
                                     {Field::ExprPrime, Direction::Maximize}};
    const auto front = pareto_front(records, obj);
    std::vector<RedundancyRow> rows;
    for (const auto &r : records) {
        rows.push_back({r, redundancy(r, front)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const RedundancyRow &a, const RedundancyRow &b) {
        if (a.value.has_value() != b.value.has_value()) {
            return a.value.has_value();
        }
        if (a.value && *a.value != *b.value) {
            return *a.value > *b.value;
        }
        return std::tie(a.record.circuit_id, a.record.layers) <
               std::tie(b.record.circuit_id, b.record.layers);
    });
    return rows;
}

SurfaceOutcome fit_front_surface(const std::string &label, std::span<const DesignPoint> points,
                                 int degree, AxisMapping axes) {
    SurfaceOutcome o;
    o.label = label;
    o.requested_degree = degree;
    o.points.assign(points.begin(), points.end());
    try {
        o.fit = fit_surface(points, degree, axes);
        o.degree = degree;
        return o;
    } catch (const RankDeficientError &e) {
        if (degree <= 1) {
            throw;
        }
        o.downgrade_reason = e.what();
    } catch (const std::invalid_argument &e) {
        if (degree <= 1 || points.size() < monomial_count(1)) {
            throw;
        }
        o.downgrade_reason = e.what();
    }
    o.fit = fit_surface(points, 1, axes);
    o.degree = 1;
    return o;
}

std::vector<DesignPoint> encode_records(std::span<const MetricRecord> records,
                                        std::span<const CircuitTemplate> catalog,
                                        const GateSetIndex &index) {
    std::vector<DesignPoint> pts;
    for (const auto &r : records) {
        pts.push_back(encode(find_template(catalog, r.circuit_id), r.layers, index));
    }
    return pts;
}

namespace {

struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json front_to_json(const LabelledFront &f) {
    json members = json::array();
    for (const auto &m : f.members) {
        members.push_back(record_to_json(m));
    }
    json objectives = json::array();
    for (const auto &o : f.objectives) {
        objectives.push_back(objective_label(o));
    }
    return {{"label", f.label},
            {"objectives", objectives},
            {"max_cost", std::isnan(f.max_cost) ? json(nullptr) : json(f.max_cost)},
            {"members", members}};
}

constexpr std::string_view kTableHeader =
    "instance_id,circuit_id,layers,n_params,n_2q,depth,expr_prime,trainability,cost,score\n";

std::string table_row(const MetricRecord &r) {
    return fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.instance_id(), r.circuit_id, r.layers,
                       r.resources.n_params, r.resources.n_two_qubit, r.resources.depth,
                       format_real(r.expr_prime), format_real(r.trainability), format_real(r.cost),
                       format_real(r.score));
}

std::string records_table(std::span<const MetricRecord> rs) {
    std::string s(kTableHeader);
    for (const auto &r : rs) {
        s += table_row(r);
    }
    return s;
}

std::string redundancy_csv(std::span<const RedundancyRow> rows) {
    std::string s = "instance_id,circuit_id,layers,n_params,expr_prime,redundancy\n";
    for (const auto &row : rows) {
        const auto &r = row.record;
        s += fmt::format("{},{},{},{},{},{}\n", r.instance_id(), r.circuit_id, r.layers,
                         r.resources.n_params, format_real(r.expr_prime),
                         row.value ? format_real(*row.value) : std::string());
    }
    return s;
}

json encodings_json(const GateSetIndex &index) {
    return {{"connectivity_ord", {"none", "linear", "circular", "all_to_all"}},
            {"gate_set_ord", index.labels()}};
}

struct LoadedResults {
    std::vector<MetricRecord> records; // filtered to one hamiltonian
    std::string hamiltonian;
    std::string checksum;
    json manifest;
};

LoadedResults load_results(const fs::path &csv_path, const fs::path &manifest_override,
                           const std::string &hamiltonian) {
    const std::string text = read_text_file(csv_path);
    const fs::path manifest_path =
        manifest_override.empty() ? csv_path.parent_path() / "manifest.json" : manifest_override;
    if (!fs::exists(manifest_path)) {
        throw RuntimeFailure("no run manifest at " + manifest_path.string());
    }
    LoadedResults out;
    out.manifest = json::parse(read_text_file(manifest_path));
    out.checksum = checksum_hex(text);
    const auto expected = out.manifest.at("results_checksum").get<std::string>();
    if (expected != out.checksum) {
        throw RuntimeFailure(fmt::format("{} does not match its manifest (checksum {} != {})",
                                         csv_path.string(), out.checksum, expected));
    }
    auto all = results_from_csv(text);
    std::set<std::string> hams;
    for (const auto &r : all) {
        hams.insert(r.hamiltonian_id);
    }
    if (hamiltonian.empty()) {
        if (hams.size() != 1) {
            throw UsageError("results hold several hamiltonians; pick one with --hamiltonian");
        }
        out.hamiltonian = *hams.begin();
    } else {
        if (!hams.contains(hamiltonian)) {
            throw UsageError("results hold no rows for hamiltonian '" + hamiltonian + "'");
        }
        out.hamiltonian = hamiltonian;
    }
    for (auto &r : all) {
        if (r.hamiltonian_id == out.hamiltonian) {
            out.records.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<CircuitTemplate> load_checked_catalog(const fs::path &path, int qubits) {
    std::vector<CircuitTemplate> cat;
    try {
        cat = load_catalog(path);
    } catch (const CatalogError &e) {
        throw RuntimeFailure(e.what());
    }
    for (const auto &t : cat) {
        if (t.n_qubits != qubits) {
            throw UsageError(fmt::format("template {} has {} qubits but --qubits is {}", t.id,
                                         t.n_qubits, qubits));
        }
    }
    return cat;
}

void set_threads(int threads) {
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
}

int cmd_validate_catalog(const fs::path &catalog, const std::vector<int> &layers, std::ostream &out) {
    std::vector<CircuitTemplate> cat;
    try {
        cat = load_catalog(catalog);
    } catch (const CatalogError &e) {
        throw RuntimeFailure(e.what());
    }
    out << fmt::format("{}: {} templates, format_version 1\n", catalog.string(), cat.size());
    out << "id,layers,connectivity,gate_set,n_params,n_2q,depth\n";
    for (const auto &t : cat) {
        for (int l : layers) {
            const auto c = instantiate(t, l);
            const auto rc = resource_counts(c);
            out << fmt::format("{},{},{},{},{},{},{}\n", t.id, l, to_string(t.connectivity),
                               c.gate_set_label, rc.n_params, rc.n_two_qubit, rc.depth);
        }
    }
    return kExitOk;
}

int cmd_evaluate(const RunConfig &cfg, std::ostream &err) {
    cfg.validate();
    const auto cat = load_checked_catalog(cfg.catalog, cfg.qubits);
    set_threads(cfg.threads);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<MetricRecord> completed;
    std::vector<MetricRecord> records;
    const fs::path csv_path = cfg.out_dir / "results.csv";
    try {
        records = evaluate_catalog(cat, cfg, [&err](const std::string &s) { err << s << "\n"; },
                                   &completed);
    } catch (const std::exception &e) {
        write_text_file(fs::path(csv_path) += ".partial", results_to_csv(completed));
        throw RuntimeFailure(fmt::format("evaluation failed after {} rows: {}", completed.size(),
                                         e.what()));
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string csv = results_to_csv(records);
    write_text_file(csv_path, csv);

    std::vector<int> layers = cfg.layers;
    std::sort(layers.begin(), layers.end());
    layers.erase(std::unique(layers.begin(), layers.end()), layers.end());
    json jobs = json::array();
    std::vector<CircuitTemplate> sorted = cat;
    std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) { return a.id < b.id; });
    for (const auto &t : sorted) {
        for (int l : layers) {
            const auto s = instance_seeds(cfg.seed, t.id, l);
            jobs.push_back({{"instance_id", t.id + "-L" + std::to_string(l)},
                            {"expressibility_seed", s.expressibility},
                            {"trainability_seed", s.trainability}});
        }
    }
    const GateSetIndex index(cat);
    const json manifest{
        {"format_version", 1},
        {"command", "evaluate"},
        {"config",
         {{"catalog", fs::absolute(cfg.catalog).lexically_normal().string()},
          {"hamiltonians", cfg.hamiltonians},
          {"qubits", cfg.qubits},
          {"layers", layers},
          {"pairs", cfg.n_pairs},
          {"bins", cfg.n_bins},
          {"grad_samples", cfg.n_samples},
          {"seed", cfg.seed},
          {"weights", {cfg.weights.alpha, cfg.weights.beta, cfg.weights.gamma}},
          {"constraints", cfg.constraints}}},
        {"seeds",
         {{"master", cfg.seed},
          {"scheme", "job_seed(master, circuit_id, layers, metric); sample i uses "
                     "sample_seed(job, i)"},
          {"jobs", jobs}}},
        {"catalog_checksum", checksum_hex(read_text_file(cfg.catalog))},
        {"results_file", "results.csv"},
        {"results_checksum", checksum_hex(csv)},
        {"normalization", normalization_to_json(population_context(cat, layers))},
        {"encodings", encodings_json(index)},
        {"runtime", {{"threads", omp_get_max_threads()}, {"wall_time_s", wall}}}};
    write_text_file(cfg.out_dir / "manifest.json", dump_json(manifest));
    err << fmt::format("wrote {} rows to {} in {:.1f} s\n", records.size(), csv_path.string(), wall);
    return kExitOk;
}

void recompute_costs(LoadedResults &in, const std::optional<CostWeights> &weights) {
    if (!weights) {
        return;
    }
    const auto ctx = normalization_from_json(in.manifest.at("normalization"));
    assign_costs(in.records, ctx, *weights);
}

int cmd_pareto(const LoadedResults &in, const std::vector<double> &constraints, std::size_t top_k,
               const fs::path &out_dir, std::ostream &out) {
    const auto et = expr_train_fronts(in.records, constraints);
    const auto ec = expr_cost_fronts(in.records);
    const auto red = redundancy_ranking(in.records);
    const auto ranked = rank_by_score(in.records);

    json j{{"format_version", 1},
           {"hamiltonian", in.hamiltonian},
           {"results_checksum", in.checksum},
           {"n_records", in.records.size()}};
    j["expr_train_fronts"] = json::array();
    for (const auto &f : et) {
        j["expr_train_fronts"].push_back(front_to_json(f));
        write_text_file(out_dir / ("front_" + f.label + ".csv"), records_table(f.members));
    }
    j["expr_cost_fronts"] = json::array();
    for (const auto &f : ec) {
        j["expr_cost_fronts"].push_back(front_to_json(f));
        write_text_file(out_dir / ("front_expr_vs_" + f.label + ".csv"), records_table(f.members));
    }
    json rj = json::array();
    for (const auto &row : red) {
        rj.push_back({{"instance_id", row.record.instance_id()},
                      {"redundancy", row.value ? json(*row.value) : json(nullptr)}});
    }
    j["redundancy"] = rj;
    const std::size_t k = std::min(top_k, ranked.size());
    json tj = json::array();
    for (std::size_t i = 0; i < k; ++i) {
        tj.push_back(record_to_json(ranked[i]));
    }
    j["top_scores"] = tj;
    write_text_file(out_dir / "fronts.json", dump_json(j));
    write_text_file(out_dir / "redundancy.csv", redundancy_csv(red));
    write_text_file(out_dir / "top_scores.csv",
                    records_table(std::span(ranked).first(k)));

    for (const auto &f : et) {
        out << fmt::format("{} front ({}):", f.label, f.members.size());
        for (const auto &m : f.members) {
            out << " " << m.instance_id();
        }
        out << "\n";
    }
    for (const auto &f : ec) {
        out << fmt::format("expr vs {} front ({}):", f.label, f.members.size());
        for (const auto &m : f.members) {
            out << " " << m.instance_id();
        }
        out << "\n";
    }
    out << "top scores:";
    for (std::size_t i = 0; i < k; ++i) {
        out << fmt::format(" {}={:.3f}", ranked[i].instance_id(), ranked[i].score);
    }
    out << "\n";
    return kExitOk;
}

int cmd_redundancy(const LoadedResults &in, const fs::path &out_dir, std::ostream &out) {
    const auto red = redundancy_ranking(in.records);
    write_text_file(out_dir / "redundancy.csv", redundancy_csv(red));
    for (const auto &row : red) {
        out << fmt::format("{:<8} {}\n", row.record.instance_id(),
                           row.value ? fmt::format("{:.2f}", *row.value) : "n/a");
    }
    return kExitOk;
}

std::string grid_csv(std::span<const GridRow> rows) {
    std::string s = "x,y,z,score_pred\n";
    for (const auto &r : rows) {
        s += fmt::format("{},{},{},{}\n", format_real(r.x), format_real(r.y), format_real(r.z),
                         format_real(r.score_pred));
    }
    return s;
}

int cmd_dse(const LoadedResults &in, const fs::path &fronts_path, const fs::path &catalog_override,
            int degree, int resolution, std::uint64_t seed, AxisMapping axes, const fs::path &out_dir,
            std::ostream &out, std::ostream &err) {
    const json fronts = json::parse(read_text_file(fronts_path));
    if (fronts.at("results_checksum").get<std::string>() != in.checksum) {
        throw RuntimeFailure(fronts_path.string() + " was not derived from these results");
    }
    if (fronts.at("hamiltonian").get<std::string>() != in.hamiltonian) {
        throw UsageError("fronts and --hamiltonian disagree");
    }
    const fs::path cat_path = catalog_override.empty()
                                  ? fs::path(in.manifest.at("config").at("catalog").get<std::string>())
                                  : catalog_override;
    const auto cat = load_catalog(cat_path);
    const GateSetIndex index(cat);

    std::vector<TrainingSample> samples;
    for (const auto &r : in.records) {
        if (std::isnan(r.score)) {
            continue;
        }
        samples.push_back({encode(find_template(cat, r.circuit_id), r.layers, index), r.score});
    }
    const auto reg =
        train_regressor(samples, {0.01, 5000, job_seed(seed, "regressor", 0, "dse")});

    json surfaces = json::array();
    for (const auto &f : fronts.at("expr_train_fronts")) {
        const std::string label = f.at("label");
        if (f.at("members").empty()) {
            throw RuntimeFailure("front '" + label + "' is empty");
        }
        std::vector<DesignPoint> pts;
        for (const auto &m : f.at("members")) {
            pts.push_back(encode(find_template(cat, m.at("circuit_id").get<std::string>()),
                                 m.at("layers").get<int>(), index));
        }
        SurfaceOutcome o;
        try {
            o = fit_front_surface(label, pts, degree, axes);
        } catch (const std::exception &e) {
            throw RuntimeFailure("front '" + label + "': " + e.what());
        }
        if (!o.downgrade_reason.empty()) {
            err << fmt::format("warning: front '{}' fitted at degree 1: {}\n", label,
                               o.downgrade_reason);
        }
        write_text_file(out_dir / ("grid_" + label + ".csv"),
                        grid_csv(predict_grid(reg, o.fit, resolution)));
        json members = json::array();
        for (const auto &p : pts) {
            members.push_back({{"circuit_id", p.circuit_id},
                               {"layers", p.layers},
                               {"connectivity_ord", p.connectivity_ord},
                               {"gate_set_ord", p.gate_set_ord}});
        }
        surfaces.push_back({{"label", label},
                            {"requested_degree", o.requested_degree},
                            {"degree", o.degree},
                            {"downgrade_reason", o.downgrade_reason},
                            {"points", members},
                            {"surface", surface_to_json(o.fit)},
                            {"grid_file", "grid_" + label + ".csv"}});
        out << fmt::format("{}: {} points, degree {}, residual rms {:.4g}\n", label, pts.size(),
                           o.degree, o.fit.residual_rms);
    }
    const json j{{"format_version", 1},
                 {"hamiltonian", in.hamiltonian},
                 {"results_checksum", in.checksum},
                 {"encodings", encodings_json(index)},
                 {"resolution", resolution},
                 {"surfaces", surfaces},
                 {"regressor", reg.to_json()}};
    write_text_file(out_dir / "dse.json", dump_json(j));
    out << fmt::format("regressor: {} samples, training mse {:.3g}\n", samples.size(),
                       reg.train_mse);
    return kExitOk;
}

int cmd_report(const LoadedResults &in, Field xf, Field yf, std::size_t resolution,
               const fs::path &out_dir, std::ostream &out, std::ostream &err) {
    const auto rep = layer_centroids(in.records, xf, yf, resolution);
    for (int l : rep.skipped_layers) {
        err << fmt::format("warning: layer group L={} has fewer than 2 records, skipped\n", l);
    }
    json groups = json::array();
    for (const auto &g : rep.groups) {
        groups.push_back({{"layers", g.layers},
                          {"n_records", g.n_records},
                          {"mode", {g.mode_x, g.mode_y}},
                          {"weighted_mean", {g.mean_x, g.mean_y}},
                          {"level95", g.level95},
                          {"grid_file", fmt::format("kde_L{}.csv", g.layers)}});
        std::string s = "x,y,density\n";
        for (std::size_t iy = 0; iy < g.grid.ys.size(); ++iy) {
            for (std::size_t ix = 0; ix < g.grid.xs.size(); ++ix) {
                s += fmt::format("{},{},{}\n", format_real(g.grid.xs[ix]),
                                 format_real(g.grid.ys[iy]),
                                 format_real(g.grid.density[iy * g.grid.xs.size() + ix]));
            }
        }
        write_text_file(out_dir / fmt::format("kde_L{}.csv", g.layers), s);
        out << fmt::format("L={} n={} mode=({:.4g}, {:.4g}) mean=({:.4g}, {:.4g})\n", g.layers,
                           g.n_records, g.mode_x, g.mode_y, g.mean_x, g.mean_y);
    }
    write_text_file(out_dir / "centroids.json",
                    dump_json({{"format_version", 1},
                               {"hamiltonian", in.hamiltonian},
                               {"results_checksum", in.checksum},
                               {"x", to_string(xf)},
                               {"y", to_string(yf)},
                               {"groups", groups},
                               {"skipped_layers", rep.skipped_layers}}));

    std::vector<double> expr, cst;
    for (const auto &r : in.records) {
        expr.push_back(r.expr_prime);
        cst.push_back(r.cost);
    }
    json summary{{"format_version", 1},
                 {"hamiltonian", in.hamiltonian},
                 {"n_records", in.records.size()}};
    try {
        summary["pearson_expr_prime_cost"] = pearson(expr, cst);
    } catch (const std::invalid_argument &) {
        summary["pearson_expr_prime_cost"] = nullptr;
    }
    const auto best_expr = std::max_element(
        in.records.begin(), in.records.end(),
        [](const auto &a, const auto &b) { return a.expr_prime < b.expr_prime; });
    summary["max_expr_prime"] = record_to_json(*best_expr);
    const auto ranked = rank_by_score(in.records);
    json top = json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(4, ranked.size()); ++i) {
        top.push_back(record_to_json(ranked[i]));
    }
    summary["top_scores"] = top;
    write_text_file(out_dir / "summary.json", dump_json(summary));
    out << fmt::format("pearson(expr_prime, cost) = {}\n",
                       summary["pearson_expr_prime_cost"].dump());
    return kExitOk;
}

void report_error(std::ostream &err, const char *what) noexcept {
    try {
        err << "error: " << what << "\n";
    } catch (...) {
    }
}

AxisMapping parse_axes(const std::vector<std::string> &names) {
    if (names.size() != 3) {
        throw UsageError("--axes needs three coordinates, e.g. layers,connectivity,gate_set");
    }
    try {
        AxisMapping a{parse_coord(names[0]), parse_coord(names[1]), parse_coord(names[2])};
        a.validate();
        return a;
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

Field parse_field_or_throw(const std::string &name) {
    const auto f = parse_field(name);
    if (!f) {
        throw UsageError("unknown field '" + name + "'");
    }
    return *f;
}

CostWeights parse_weights(const std::vector<double> &w) {
    if (w.size() != 3) {
        throw UsageError("--weights needs three values a,b,c");
    }
    return {w[0], w[1], w[2]};
}

} // namespace

int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Design-space exploration of parametrized quantum circuits", "pqcdse"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.catalog = PQCDSE_DEFAULT_CATALOG;
    std::string catalog_str = cfg.catalog.string();
    std::string hamiltonian_str = "tfim";
    std::vector<double> weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    std::string out_str = "out";
    std::string results_str, manifest_str, fronts_str;
    std::size_t top_k = 10;
    int degree = 2;
    int resolution = 50;
    std::size_t kde_resolution = 100;
    std::vector<std::string> axes{"layers", "connectivity", "gate_set"};
    std::string x_field = "depth", y_field = "trainability";
    bool weights_given = false;

    auto *validate = app.add_subcommand("validate-catalog", "check a catalog and list resources");
    validate->add_option("--catalog", catalog_str, "catalog JSON");
    validate->add_option("--layers", cfg.layers, "layer counts")->delimiter(',');

    auto *evaluate = app.add_subcommand("evaluate", "compute metrics for every catalog instance");
    evaluate->add_option("--catalog", catalog_str, "catalog JSON");
    evaluate->add_option("--hamiltonian", hamiltonian_str, "tfim|heisenberg|localx, comma separated");
    evaluate->add_option("--qubits", cfg.qubits, "qubit count");
    evaluate->add_option("--layers", cfg.layers, "layer counts")->delimiter(',');
    evaluate->add_option("--pairs", cfg.n_pairs, "fidelity pairs per instance");
    evaluate->add_option("--bins", cfg.n_bins, "fidelity histogram bins");
    evaluate->add_option("--grad-samples", cfg.n_samples, "gradient samples per instance");
    evaluate->add_option("--seed", cfg.seed, "master seed");
    evaluate->add_option("--weights", weights, "cost weights a,b,c")->delimiter(',');
    evaluate->add_option("--constraint", cfg.constraints, "cost constraints")->delimiter(',');
    evaluate->add_option("--threads", cfg.threads, "OpenMP threads (0 = default)");
    evaluate->add_option("--out", out_str, "output directory");

    const auto add_results = [&](CLI::App *sub) {
        sub->add_option("--results", results_str, "results CSV")->required();
        sub->add_option("--manifest", manifest_str, "run manifest (default: next to the CSV)");
        sub->add_option("--hamiltonian", hamiltonian_str, "hamiltonian rows to analyse");
        sub->add_option("--out", out_str, "output directory");
    };
    auto *pareto = app.add_subcommand("pareto", "fronts, redundancy and score tables");
    add_results(pareto);
    auto *pareto_weights =
        pareto->add_option("--weights", weights, "recompute cost with weights a,b,c")->delimiter(',');
    pareto->add_option("--constraint", cfg.constraints, "cost constraints")->delimiter(',');
    pareto->add_option("--top", top_k, "rows in the score table");

    auto *redundancy_cmd = app.add_subcommand("redundancy", "parameter redundancy ranking");
    add_results(redundancy_cmd);

    auto *dse = app.add_subcommand("dse", "fit design-space surfaces and the score regressor");
    add_results(dse);
    dse->add_option("--fronts", fronts_str, "fronts JSON (default: next to the CSV)");
    dse->add_option("--catalog", catalog_str, "catalog JSON (default: from the manifest)");
    dse->add_option("--degree", degree, "surface degree");
    dse->add_option("--resolution", resolution, "grid resolution per axis");
    dse->add_option("--seed", cfg.seed, "regressor seed");
    dse->add_option("--axes", axes, "x,y,z design coordinates")->delimiter(',');
    dse->add_option("--threads", cfg.threads, "OpenMP threads (0 = default)");

    auto *report = app.add_subcommand("report", "per-layer KDE centroids and summary statistics");
    add_results(report);
    report->add_option("--x", x_field, "x field");
    report->add_option("--y", y_field, "y field");
    report->add_option("--resolution", kde_resolution, "KDE grid resolution");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const bool catalog_given = [&] {
        for (auto *sub : {validate, evaluate, dse}) {
            if (sub->parsed() && sub->count("--catalog") > 0) {
                return true;
            }
        }
        return false;
    }();
    weights_given = pareto_weights->count() > 0;
    const fs::path out_dir(out_str);
    auto *active = app.get_subcommands().front();
    const std::string ham_filter =
        (active == validate || active == evaluate || active->count("--hamiltonian") == 0)
            ? std::string()
            : hamiltonian_str;

    try {
        if (validate->parsed()) {
            return cmd_validate_catalog(catalog_str, cfg.layers, out);
        }
        if (evaluate->parsed()) {
            cfg.catalog = catalog_str;
            cfg.out_dir = out_dir;
            cfg.weights = parse_weights(weights);
            cfg.hamiltonians.clear();
            std::string_view rest = hamiltonian_str;
            while (!rest.empty()) {
                const auto pos = rest.find(',');
                cfg.hamiltonians.emplace_back(rest.substr(0, pos));
                rest = pos == std::string_view::npos ? std::string_view() : rest.substr(pos + 1);
            }
            return cmd_evaluate(cfg, err);
        }
        for (double c : cfg.constraints) {
            if (!(c >= 0.0 && c <= 1.0)) {
                throw UsageError("--constraint values must lie in [0, 1]");
            }
        }
        if (!ham_filter.empty() && !is_known_hamiltonian(ham_filter)) {
            throw UsageError("unknown hamiltonian '" + ham_filter + "'");
        }
        std::optional<CostWeights> w;
        if (weights_given) {
            w = parse_weights(weights);
            try {
                w->validate();
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
        }
        const AxisMapping axis_map = dse->parsed() ? parse_axes(axes) : AxisMapping{};
        const Field xf = parse_field_or_throw(x_field);
        const Field yf = parse_field_or_throw(y_field);
        if (dse->parsed() && resolution < 1) {
            throw UsageError("--resolution must be positive");
        }
        auto in = load_results(results_str, manifest_str, ham_filter);
        recompute_costs(in, w);
        if (pareto->parsed()) {
            return cmd_pareto(in, cfg.constraints, top_k, out_dir, out);
        }
        if (redundancy_cmd->parsed()) {
            return cmd_redundancy(in, out_dir, out);
        }
        if (dse->parsed()) {
            set_threads(cfg.threads);
            const fs::path fronts_path = fronts_str.empty()
                                             ? fs::path(results_str).parent_path() / "fronts.json"
                                             : fs::path(fronts_str);
            return cmd_dse(in, fronts_path, catalog_given ? fs::path(catalog_str) : fs::path(),
                           degree, resolution, cfg.seed, axis_map, out_dir, out, err);
        }
        return cmd_report(in, xf, yf, kde_resolution, out_dir, out, err);
    } catch (const UsageError &e) {
        report_error(err, e.what());
        return kExitUsage;
    } catch (const std::exception &e) {
        report_error(err, e.what());
        return kExitFailure;
    }
}

} // namespace pqcdse
