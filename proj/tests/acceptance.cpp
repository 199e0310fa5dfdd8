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
// Acceptance report: one PASS/FAIL line per primary criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "oracles.hpp"
#include "pqcdse/cli.hpp"
#include "pqcdse/dse.hpp"
#include "pqcdse/expressibility.hpp"
#include "pqcdse/observables.hpp"
#include "pqcdse/pareto.hpp"
#include "pqcdse/results_io.hpp"
#include "pqcdse/rng.hpp"
#include "pqcdse/simulate.hpp"
#include "pqcdse/trainability.hpp"

using namespace pqcdse;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(bool ok, const std::string &name, const std::string &detail) {
    std::printf("%s  %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

std::string check(const std::string &label, double v, double target, double tol, bool &ok) {
    const bool good = within(v, target, tol);
    ok = ok && good;
    return fmt::format("{}={:.3f} (target {:.3f}±{:.2f}{})", label, v, target, tol,
                       good ? "" : " MISS");
}

const MetricRecord &find(const std::vector<MetricRecord> &rs, const std::string &instance) {
    for (const auto &r : rs) {
        if (r.instance_id() == instance) {
            return r;
        }
    }
    throw std::runtime_error("no record " + instance);
}

std::set<std::string> ids(const std::vector<MetricRecord> &rs) {
    std::set<std::string> s;
    for (const auto &r : rs) {
        s.insert(r.instance_id());
    }
    return s;
}

std::string join(const std::vector<MetricRecord> &rs) {
    std::string s;
    for (const auto &r : rs) {
        s += (s.empty() ? "" : " ") + r.instance_id();
    }
    return s;
}

double train_at(const CircuitTemplate &t, int layers, const char *ham) {
    const auto c = instantiate(t, layers);
    return trainability(c, make_hamiltonian(ham, 4), kDefaultGradSamples,
                        instance_seeds(1, t.id, layers).trainability)
        .mean_variance;
}

void static_anchors(const std::vector<CircuitTemplate> &cat) {
    const auto rc = [&](const char *id, int l) {
        return resource_counts(instantiate(find_template(cat, id), l));
    };
    const ResourceCounts big{84, 36, 48}, small{8, 4, 6};
    const bool ok = rc("A05", 3) == big && rc("A06", 3) == big && rc("A10", 1) == small;
    const auto fmt_rc = [](ResourceCounts r) {
        return fmt::format("({}, {}, {})", r.n_params, r.n_two_qubit, r.depth);
    };
    report(ok, "static resource anchors",
           fmt::format("A05-L3 {} A06-L3 {} A10-L1 {} as (params, 2q, depth)", fmt_rc(rc("A05", 3)),
                       fmt_rc(rc("A06", 3)), fmt_rc(rc("A10", 1))));
}

void cost_normalization(const std::vector<MetricRecord> &rs) {
    const double a5 = find(rs, "A05-L3").cost, a6 = find(rs, "A06-L3").cost;
    const double a10 = find(rs, "A10-L1").cost;
    report(a5 == 1.0 && a6 == 1.0 && a10 < 0.10, "cost normalization",
           fmt::format("A05-L3 {:.6f} A06-L3 {:.6f} A10-L1 {:.4f}", a5, a6, a10));
}

void trainability_points(const std::vector<CircuitTemplate> &cat,
                         const std::vector<MetricRecord> &rs) {
    bool ok = true;
    std::string d = check("A10-L1 tfim", find(rs, "A10-L1").trainability, 0.667, 0.05, ok);
    d += " " + check("A10-L1 heisenberg", train_at(find_template(cat, "A10"), 1, "heisenberg"),
                     0.659, 0.05, ok);
    d += " " + check("A09-L2 localx", train_at(find_template(cat, "A09"), 2, "localx"), 0.493, 0.05,
                     ok);
    report(ok, "trainability point checks", d);
}

void saturation_table(const std::vector<CircuitTemplate> &cat) {
    std::map<std::string, double> tfim5;
    double mean_t = 0.0, mean_h = 0.0, mean_x = 0.0;
    for (const auto &t : cat) {
        tfim5[t.id] = train_at(t, 5, "tfim");
        mean_t += tfim5[t.id] / cat.size();
        mean_h += train_at(t, 5, "heisenberg") / cat.size();
        mean_x += train_at(t, 5, "localx") / cat.size();
    }
    bool ok = true;
    std::string d;
    for (const auto &[id, target] : std::vector<std::pair<std::string, double>>{
             {"A10", 0.440}, {"A15", 0.413}, {"A01", 0.343}, {"A09", 0.246}, {"A03", 0.205}}) {
        d += check(id + "-L5", tfim5[id], target, 0.04, ok) + " ";
    }
    d += check("mean", mean_t, 0.211, 0.04, ok);
    const auto top = std::max_element(tfim5.begin(), tfim5.end(),
                                      [](const auto &a, const auto &b) { return a.second < b.second; });
    const bool first = top->first == "A10";
    ok = ok && first;
    d += fmt::format(" first={}-L5{}", top->first, first ? "" : " MISS");
    d += " " + check("heisenberg mean", mean_h, 0.257, 0.04, ok);
    d += " " + check("localx mean", mean_x, 0.129, 0.04, ok);
    report(ok, "L=5 saturation table", d);
}

void score_checks(const std::vector<MetricRecord> &rs) {
    bool ok = true;
    std::string d;
    for (const auto &[id, target] : std::vector<std::pair<std::string, double>>{
             {"A11-L3", 0.469}, {"A12-L3", 0.452}, {"A08-L3", 0.444}, {"A17-L3", 0.433}}) {
        d += check(id, find(rs, id).score, target, 0.05, ok) + " ";
    }
    const auto ranked = rank_by_score(rs);
    const std::vector<MetricRecord> top4(ranked.begin(), ranked.begin() + 4);
    const bool a11 = ids(top4).contains("A11-L3");
    ok = ok && a11;
    d += fmt::format("top4=[{}]{} ", join(top4), a11 ? "" : " MISS(A11-L3)");
    d += check("A10-L1", find(rs, "A10-L1").score, 0.428, 0.05, ok);
    const std::vector<double> constraints{0.2, 0.1};
    bool everywhere = true;
    for (const auto &f : expr_train_fronts(rs, constraints)) {
        everywhere = everywhere && ids(f.members).contains("A10-L1");
    }
    ok = ok && everywhere;
    d += fmt::format(" A10-L1 on all expr-train fronts: {}", everywhere ? "yes" : "no MISS");
    report(ok, "score checks", d);
}

void constrained_front(const std::vector<MetricRecord> &rs) {
    const std::vector<double> c{0.1};
    const auto front = expr_train_fronts(rs, c)[1].members;
    const auto got = ids(front);
    int hits = 0;
    for (const char *id : {"A10-L1", "A04-L1", "A01-L2", "A11-L1"}) {
        hits += got.contains(id) ? 1 : 0;
    }
    report(got.contains("A10-L1") && hits >= 3, "constrained front anchor",
           fmt::format("cost<=0.10 front [{}], {}/4 reference members", join(front), hits));
}

void expr_cost_anchors(const std::vector<MetricRecord> &rs) {
    const auto best = std::max_element(rs.begin(), rs.end(), [](const auto &a, const auto &b) {
        return a.expr_prime < b.expr_prime;
    });
    bool ok = best->instance_id() == "A14-L3";
    std::string d = fmt::format("max expr_prime {} ({:.3f}; A14-L3 {:.3f})", best->instance_id(),
                                best->expr_prime, find(rs, "A14-L3").expr_prime);
    for (const auto &f : expr_cost_fronts(rs)) {
        const auto got = ids(f.members);
        const bool both = got.contains("A11-L3") && got.contains("A14-L3");
        ok = ok && both;
        d += fmt::format("; {} front [{}]{}", f.label, join(f.members), both ? "" : " MISS");
    }
    report(ok, "expressibility-cost anchors", d);
}

// Deterministic property suite.

bool prop_parameter_shift() {
    std::mt19937_64 rng(1);
    const Observable obs(3, {{0.8, "XZY"}, {-0.5, "ZZI"}, {0.3, "IYX"}, {1.1, "XII"}});
    for (GateKind k : kAllGateKinds) {
        if (!is_parametrized(k)) {
            continue;
        }
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<Gate> gates{{GateKind::H, {0}, {}}, {GateKind::RY, {1}, {}},
                                    {GateKind::CX, {0, 1}, {}}};
            gates.push_back(arity(k) == 1 ? Gate{k, {trial % 3}, {}}
                                          : Gate{k, {trial % 3, (trial + 1) % 3}, {}});
            gates.push_back({GateKind::RX, {2}, {}});
            const auto c = oracle::make_circuit(3, gates);
            const auto theta = oracle::uniform_angles(c.n_params, rng);
            const auto g = gradient(c, obs, theta);
            const auto fd = oracle::finite_difference_gradient(c, obs, theta, 1e-5);
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (std::abs(g[i] - fd[i]) > 1e-6) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool prop_norm() {
    std::mt19937_64 rng(2);
    for (GateKind k : kAllGateKinds) {
        for (int i = 0; i < 100; ++i) {
            auto v = oracle::haar_state(16, rng);
            auto s = StateVector::from_amplitudes(std::vector<Complex>(v.begin(), v.end()));
            const int a = static_cast<int>(rng() % 4), b = (a + 1 + static_cast<int>(rng() % 3)) % 4;
            const Gate g = arity(k) == 1 ? Gate{k, {a}, {}} : Gate{k, {a, b}, {}};
            apply_gate_inplace(s, g,
                               is_parametrized(k) ? std::optional(oracle::uniform_angles(1, rng)[0])
                                                  : std::nullopt);
            if (std::abs(s.norm_squared() - 1.0) >= 1e-10) {
                return false;
            }
        }
    }
    return true;
}

bool prop_haar_and_kl() {
    for (std::size_t bins : {1u, 2u, 75u, 200u}) {
        for (std::size_t dim : {2u, 16u, 64u}) {
            const auto m = haar_bin_masses(bins, dim);
            if (std::abs(std::accumulate(m.begin(), m.end(), 0.0) - 1.0) > 1e-12) {
                return false;
            }
        }
    }
    if (kl_divergence({{5, 5, 5, 5}, 20}, haar_bin_masses(4, 2)) != 0.0) {
        return false;
    }
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        FidelityHistogram h;
        for (int k = 0; k < 20; ++k) {
            h.counts.push_back(rng() % 40);
            h.n_samples += h.counts.back();
        }
        if (h.n_samples > 0 && kl_divergence(h, haar_bin_masses(20, 16)) < 0.0) {
            return false;
        }
    }
    return true;
}

bool prop_haar_oracle(double &worst_fraction) {
    const auto q = haar_bin_masses(kDefaultBins, 16);
    int below = 0;
    for (int s = 0; s < 40; ++s) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(s));
        std::vector<double> f;
        for (std::size_t k = 0; k < kDefaultPairs; ++k) {
            const auto a = oracle::haar_state(16, rng), b = oracle::haar_state(16, rng);
            std::complex<double> ip = 0.0;
            for (std::size_t i = 0; i < 16; ++i) {
                ip += std::conj(a[i]) * b[i];
            }
            f.push_back(std::norm(ip));
        }
        below += kl_divergence(histogram_from(f, kDefaultBins), q) < 0.006 ? 1 : 0;
    }
    worst_fraction = below / 40.0;
    return below >= 38;
}

bool prop_pareto_oracle() {
    std::mt19937_64 rng(4);
    const std::vector<Objective> obj{{Field::ExprPrime, Direction::Maximize},
                                     {Field::Trainability, Direction::Maximize}};
    for (int t = 0; t < 2000; ++t) {
        const std::size_t n = rng() % 13;
        std::vector<MetricRecord> rs;
        std::vector<std::vector<double>> pts;
        for (std::size_t i = 0; i < n; ++i) {
            MetricRecord r;
            r.circuit_id = "R" + std::to_string(i);
            r.expr_prime = static_cast<double>(rng() % 6);
            r.trainability = static_cast<double>(rng() % 6);
            pts.push_back({r.expr_prime, r.trainability});
            rs.push_back(r);
        }
        auto got = pareto_front_indices(rs, obj);
        std::sort(got.begin(), got.end());
        if (got != oracle::brute_force_front(pts)) {
            return false;
        }
    }
    return true;
}

bool prop_unbiased_and_chebyshev(const std::vector<CircuitTemplate> &cat) {
    const auto obs = tfim(4, 1, 1);
    constexpr std::size_t n = 1000;
    for (const auto &t : cat) {
        const auto c = instantiate(t, 1);
        const auto g = sample_gradients(c, obs, n, job_seed(1, t.id, 1, "trainability"));
        const auto mean = landscape_bias_from_samples(g);
        const auto var = trainability_from_samples(g).per_param_variance;
        for (std::size_t k = 0; k < c.n_params; ++k) {
            if (std::abs(mean[k]) > 4.0 * std::sqrt(var[k] / n) + 1e-12) {
                return false;
            }
            for (double delta : {0.5, 1.0}) {
                std::size_t hits = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    hits += std::abs(g.at(i, k)) >= delta ? 1 : 0;
                }
                const double f = static_cast<double>(hits) / n;
                if (f > var[k] / (delta * delta) + 3 * std::sqrt(f * (1 - f) / n)) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool prop_regressor_gradient() {
    std::vector<std::array<double, 3>> raw{{1, 0, 2}, {2, 1, 5}, {3, 2, 1}, {1, 3, 7}, {2, 2, 3}};
    const std::vector<double> t{0.3, 0.5, 0.2, 0.4, 0.45};
    ScoreRegressor reg;
    reg.initialize(11);
    reg.fit_standardization(raw);
    std::vector<std::array<double, 3>> z;
    for (const auto &r : raw) {
        z.push_back(reg.standardize(r));
    }
    std::vector<double> grad(ScoreRegressor::parameter_count());
    reg.loss(z, t, grad);
    auto &p = reg.parameters();
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double p0 = p[k];
        p[k] = p0 + 1e-6;
        const double lp = reg.loss(z, t, {});
        p[k] = p0 - 1e-6;
        const double lm = reg.loss(z, t, {});
        p[k] = p0;
        const double fd = (lp - lm) / 2e-6;
        if (std::abs(grad[k] - fd) > 1e-5 * std::max(1.0, std::abs(fd))) {
            return false;
        }
    }
    return true;
}

bool prop_surface() {
    const std::vector<double> x{0, 1, 0}, y{0, 0, 1}, z{1, 3, -2};
    if (fit_surface_xyz(x, y, z, 1).residual_rms > 1e-9) {
        return false;
    }
    std::vector<double> xs, ys, zs;
    for (int i = 0; i < 6; ++i) {
        xs.push_back(std::cos(i * 1.1) * (1 + i));
        ys.push_back(std::sin(i * 0.7) * (2 - 0.3 * i));
        zs.push_back(0.1 * i * i - 1);
    }
    return fit_surface_xyz(xs, ys, zs, 2).residual_rms <= 1e-9;
}

bool prop_byte_determinism(std::string &detail) {
    const auto base = fs::temp_directory_path() / "pqcdse_acceptance_determinism";
    fs::remove_all(base);
    std::map<std::string, std::string> first;
    for (int threads : {1, 2, 4}) {
        const auto dir = base / std::to_string(threads);
        const std::string out = dir.string(), res = (dir / "results.csv").string();
        std::ostringstream o, e;
        const std::string t = std::to_string(threads);
        int rc = run_cli({"evaluate", "--pairs", "1000", "--grad-samples", "100", "--threads", t,
                          "--out", out},
                         o, e);
        rc |= run_cli({"pareto", "--results", res, "--out", out}, o, e);
        rc |= run_cli({"dse", "--results", res, "--threads", t, "--out", out}, o, e);
        rc |= run_cli({"report", "--results", res, "--out", out}, o, e);
        if (rc != 0) {
            detail = "pipeline failed: " + e.str();
            return false;
        }
        std::map<std::string, std::string> files;
        for (const auto &entry : fs::directory_iterator(dir)) {
            auto bytes = read_text_file(entry.path());
            if (entry.path().filename() == "manifest.json") {
                auto j = nlohmann::json::parse(bytes);
                j.erase("runtime");
                bytes = j.dump();
            }
            files[entry.path().filename().string()] = bytes;
        }
        if (first.empty()) {
            first = files;
        } else if (files != first) {
            detail = "outputs differ at " + t + " threads";
            return false;
        }
    }
    detail = fmt::format("{} files identical at 1/2/4 threads", first.size());
    return true;
}

void property_suite(const std::vector<CircuitTemplate> &cat) {
    std::vector<std::pair<std::string, bool>> parts;
    parts.emplace_back("parameter-shift", prop_parameter_shift());
    parts.emplace_back("norm", prop_norm());
    parts.emplace_back("haar-masses+kl", prop_haar_and_kl());
    double frac = 0.0;
    parts.emplace_back("haar-oracle", prop_haar_oracle(frac));
    parts.emplace_back("pareto-oracle", prop_pareto_oracle());
    parts.emplace_back("unbiased+chebyshev", prop_unbiased_and_chebyshev(cat));
    parts.emplace_back("regressor-gradient", prop_regressor_gradient());
    parts.emplace_back("surface-interpolation", prop_surface());
    std::string det;
    parts.emplace_back("byte-determinism", prop_byte_determinism(det));
    bool ok = true;
    std::string d;
    for (const auto &[name, good] : parts) {
        ok = ok && good;
        d += fmt::format("{}={} ", name, good ? "ok" : "FAILED");
    }
    d += fmt::format("(haar-oracle {:.0f}% below 0.006; {})", 100 * frac, det);
    report(ok, "property suite", d);
}

} // namespace

int main() {
    const auto cat = load_default_catalog();
    RunConfig cfg;
    cfg.catalog = PQCDSE_DEFAULT_CATALOG;
    const auto records = evaluate_catalog(cat, cfg);

    static_anchors(cat);
    cost_normalization(records);
    trainability_points(cat, records);
    saturation_table(cat);
    score_checks(records);
    constrained_front(records);
    expr_cost_anchors(records);
    property_suite(cat);

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
