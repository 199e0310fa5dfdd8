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
#include "pqcdse/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace pqcdse {

namespace {

Bounds bounds_of(std::span<const ResourceCounts> rs, std::size_t ResourceCounts::*member) {
    Bounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto &r : rs) {
        const double v = static_cast<double>(r.*member);
        b.min = std::min(b.min, v);
        b.max = std::max(b.max, v);
    }
    return b;
}

bool inside(double v, Bounds b) { return v >= b.min && v <= b.max; }

// Objective values oriented so that larger is always better.
std::vector<double> oriented(const MetricRecord &r, std::span<const Objective> objectives) {
    std::vector<double> v;
    v.reserve(objectives.size());
    for (const auto &o : objectives) {
        const double x = field_value(r, o.field);
        v.push_back(o.direction == Direction::Maximize ? x : -x);
    }
    return v;
}

bool dominates(const std::vector<double> &a, const std::vector<double> &b) {
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) {
            return false;
        }
        strictly = strictly || a[i] > b[i];
    }
    return strictly;
}

auto identity_key(const MetricRecord &r) {
    return std::tie(r.circuit_id, r.layers, r.hamiltonian_id);
}

} // namespace

void CostWeights::validate() const {
    if (alpha < 0.0 || beta < 0.0 || gamma < 0.0) {
        throw std::invalid_argument("cost weights must be non-negative");
    }
    if (!(alpha + beta + gamma > 0.0)) {
        throw std::invalid_argument("cost weights must not all be zero");
    }
}

NormalizationContext NormalizationContext::from_resources(std::span<const ResourceCounts> population) {
    if (population.empty()) {
        throw std::invalid_argument("normalization context needs a non-empty population");
    }
    return {bounds_of(population, &ResourceCounts::n_params),
            bounds_of(population, &ResourceCounts::depth),
            bounds_of(population, &ResourceCounts::n_two_qubit)};
}

NormalizationContext NormalizationContext::from_records(std::span<const MetricRecord> population) {
    std::vector<ResourceCounts> rs;
    rs.reserve(population.size());
    for (const auto &r : population) {
        rs.push_back(r.resources);
    }
    return from_resources(rs);
}

bool NormalizationContext::covers(const ResourceCounts &r) const {
    return inside(static_cast<double>(r.n_params), n_params) &&
           inside(static_cast<double>(r.depth), depth) &&
           inside(static_cast<double>(r.n_two_qubit), n_two_qubit);
}

double normalize(double x, Bounds b) {
    if (b.max == b.min) {
        return 0.0;
    }
    return (x - b.min) / (b.max - b.min);
}

double cost(const ResourceCounts &r, const NormalizationContext &ctx, const CostWeights &w) {
    return w.alpha * normalize(static_cast<double>(r.n_params), ctx.n_params) +
           w.beta * normalize(static_cast<double>(r.depth), ctx.depth) +
           w.gamma * normalize(static_cast<double>(r.n_two_qubit), ctx.n_two_qubit);
}

void assign_costs(std::span<MetricRecord> records, const NormalizationContext &ctx,
                  const CostWeights &w) {
    w.validate();
    for (auto &r : records) {
        r.cost = cost(r.resources, ctx, w);
    }
}

double score(const MetricRecord &r) {
    if (std::isnan(r.trainability) || std::isnan(r.expr_prime)) {
        throw std::invalid_argument("score of " + r.instance_id() +
                                    ": needs both trainability and expressibility");
    }
    return r.trainability * r.expr_prime;
}

std::string_view to_string(Field f) {
    switch (f) {
    case Field::ExprPrime:
        return "expr_prime";
    case Field::Trainability:
        return "trainability";
    case Field::Score:
        return "score";
    case Field::Cost:
        return "cost";
    case Field::NParams:
        return "n_params";
    case Field::NTwoQubit:
        return "n_2q";
    case Field::Depth:
        return "depth";
    case Field::Dkl:
        return "dkl";
    case Field::Layers:
        return "layers";
    }
    return "?";
}

std::optional<Field> parse_field(std::string_view name) {
    for (Field f : {Field::ExprPrime, Field::Trainability, Field::Score, Field::Cost,
                    Field::NParams, Field::NTwoQubit, Field::Depth, Field::Dkl, Field::Layers}) {
        if (to_string(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

double field_value(const MetricRecord &r, Field f) {
    double v = kMissing;
    switch (f) {
    case Field::ExprPrime:
        v = r.expr_prime;
        break;
    case Field::Trainability:
        v = r.trainability;
        break;
    case Field::Score:
        v = r.score;
        break;
    case Field::Cost:
        v = r.cost;
        break;
    case Field::NParams:
        v = static_cast<double>(r.resources.n_params);
        break;
    case Field::NTwoQubit:
        v = static_cast<double>(r.resources.n_two_qubit);
        break;
    case Field::Depth:
        v = static_cast<double>(r.resources.depth);
        break;
    case Field::Dkl:
        v = r.dkl;
        break;
    case Field::Layers:
        v = static_cast<double>(r.layers);
        break;
    }
    if (std::isnan(v)) {
        throw std::invalid_argument(r.instance_id() + ": missing field " +
                                    std::string(to_string(f)));
    }
    return v;
}

Constraint cost_at_most(double limit) {
    return [limit](const MetricRecord &r) { return field_value(r, Field::Cost) <= limit; };
}

std::vector<std::size_t> pareto_front_indices(std::span<const MetricRecord> records,
                                              std::span<const Objective> objectives,
                                              const Constraint &constraint) {
    if (objectives.empty()) {
        throw std::invalid_argument("pareto_front: no objectives");
    }
    struct Candidate {
        std::size_t index;
        std::vector<double> values;
    };
    std::vector<Candidate> feasible;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (!constraint || constraint(records[i])) {
            feasible.push_back({i, oriented(records[i], objectives)});
        }
    }
    // Lexicographically best first; dominators always precede what they dominate.
    std::stable_sort(feasible.begin(), feasible.end(), [&](const Candidate &a, const Candidate &b) {
        if (a.values != b.values) {
            return a.values > b.values;
        }
        return identity_key(records[a.index]) < identity_key(records[b.index]);
    });
    std::vector<const Candidate *> kept;
    for (const auto &c : feasible) {
        const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Candidate *k) {
            return dominates(k->values, c.values);
        });
        if (!dominated) {
            kept.push_back(&c);
        }
    }

    std::vector<std::size_t> out;
    out.reserve(kept.size());
    for (const auto *k : kept) {
        out.push_back(k->index);
    }
    const Field first = objectives.front().field;
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
        const double va = field_value(records[a], first);
        const double vb = field_value(records[b], first);
        if (va != vb) {
            return va < vb;
        }
        return identity_key(records[a]) < identity_key(records[b]);
    });
    return out;
}

std::vector<MetricRecord> pareto_front(std::span<const MetricRecord> records,
                                       std::span<const Objective> objectives,
                                       const Constraint &constraint) {
    std::vector<MetricRecord> out;
    for (std::size_t i : pareto_front_indices(records, objectives, constraint)) {
        out.push_back(records[i]);
    }
    return out;
}

std::optional<double> redundancy(const MetricRecord &record, std::span<const MetricRecord> front) {
    if (front.size() < 2) {
        return std::nullopt;
    }
    std::vector<std::pair<double, double>> pts; // (expr_prime, n_params)
    for (const auto &f : front) {
        pts.emplace_back(field_value(f, Field::ExprPrime), static_cast<double>(f.resources.n_params));
    }
    std::sort(pts.begin(), pts.end());
    const double x = field_value(record, Field::ExprPrime);
    if (x < pts.front().first || x > pts.back().first) {
        return std::nullopt;
    }
    const double own = static_cast<double>(record.resources.n_params);
    // First vertex with expr >= x; equal expr means the point lies on a vertex.
    const auto hi = std::lower_bound(pts.begin(), pts.end(), x,
                                     [](const auto &p, double v) { return p.first < v; });
    if (hi->first == x) {
        return own - hi->second;
    }
    const auto lo = hi - 1;
    const double t = (x - lo->first) / (hi->first - lo->first);
    return own - (lo->second + t * (hi->second - lo->second));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("pearson: length mismatch");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("pearson: need at least two points");
    }
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::invalid_argument("pearson: zero variance");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<MetricRecord> rank_by_score(std::span<const MetricRecord> records) {
    std::vector<MetricRecord> out(records.begin(), records.end());
    std::stable_sort(out.begin(), out.end(), [](const MetricRecord &a, const MetricRecord &b) {
        const double sa = score(a);
        const double sb = score(b);
        if (sa != sb) {
            return sa > sb;
        }
        return identity_key(a) < identity_key(b);
    });
    return out;
}

KdeGrid kde_2d(std::span<const double> x, std::span<const double> y, std::span<const double> gx,
               std::span<const double> gy) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) {
        throw std::invalid_argument("kde_2d: need at least two paired points");
    }
    const double dn = static_cast<double>(n);
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / dn;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / dn;
    double cxx = 0.0, cyy = 0.0, cxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cxx += (x[i] - mx) * (x[i] - mx);
        cyy += (y[i] - my) * (y[i] - my);
        cxy += (x[i] - mx) * (y[i] - my);
    }
    cxx /= dn - 1.0;
    cyy /= dn - 1.0;
    cxy /= dn - 1.0;

    // Variance floor relative to the grid extent.
    const double span_x = gx.back() - gx.front();
    const double span_y = gy.back() - gy.front();
    const double floor_x = std::pow(1e-3 * (span_x > 0 ? span_x : 1.0), 2);
    const double floor_y = std::pow(1e-3 * (span_y > 0 ? span_y : 1.0), 2);
    cxx = std::max(cxx, floor_x);
    cyy = std::max(cyy, floor_y);
    const double max_cxy = 0.999 * std::sqrt(cxx * cyy);
    cxy = std::clamp(cxy, -max_cxy, max_cxy);

    const double factor2 = std::pow(dn, -2.0 / 6.0); // Scott's rule, d = 2
    const double kxx = cxx * factor2;
    const double kyy = cyy * factor2;
    const double kxy = cxy * factor2;
    const double det = kxx * kyy - kxy * kxy;
    const double ixx = kyy / det;
    const double iyy = kxx / det;
    const double ixy = -kxy / det;
    const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det) * dn);

    KdeGrid g;
    g.xs.assign(gx.begin(), gx.end());
    g.ys.assign(gy.begin(), gy.end());
    g.density.assign(gx.size() * gy.size(), 0.0);
    for (std::size_t iy = 0; iy < gy.size(); ++iy) {
        for (std::size_t ix = 0; ix < gx.size(); ++ix) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double dx = gx[ix] - x[i];
                const double dy = gy[iy] - y[i];
                acc += std::exp(-0.5 * (ixx * dx * dx + 2.0 * ixy * dx * dy + iyy * dy * dy));
            }
            g.density[iy * gx.size() + ix] = acc * norm;
        }
    }
    return g;
}

CentroidReport layer_centroids(std::span<const MetricRecord> records, Field xf, Field yf,
                               std::size_t resolution) {
    if (resolution < 2) {
        throw std::invalid_argument("layer_centroids: resolution must be >= 2");
    }
    std::map<int, std::vector<const MetricRecord *>> groups;
    for (const auto &r : records) {
        groups[r.layers].push_back(&r);
    }
    CentroidReport report;
    for (const auto &[layers, members] : groups) {
        if (members.size() < 2) {
            report.skipped_layers.push_back(layers);
            continue;
        }
        std::vector<double> xs, ys;
        for (const auto *r : members) {
            xs.push_back(field_value(*r, xf));
            ys.push_back(field_value(*r, yf));
        }
        const auto axis = [resolution](const std::vector<double> &v) {
            const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
            double lo = *lo_it, hi = *hi_it;
            const double pad = hi > lo ? 0.1 * (hi - lo) : 0.5;
            lo -= pad;
            hi += pad;
            std::vector<double> g(resolution);
            for (std::size_t i = 0; i < resolution; ++i) {
                g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(resolution - 1);
            }
            return g;
        };
        LayerCentroid c;
        c.layers = layers;
        c.n_records = members.size();
        c.grid = kde_2d(xs, ys, axis(xs), axis(ys));

        const auto &d = c.grid.density;
        const std::size_t best = static_cast<std::size_t>(
            std::max_element(d.begin(), d.end()) - d.begin());
        c.mode_x = c.grid.xs[best % resolution];
        c.mode_y = c.grid.ys[best / resolution];

        double total = 0.0, wx = 0.0, wy = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            total += d[k];
            wx += d[k] * c.grid.xs[k % resolution];
            wy += d[k] * c.grid.ys[k / resolution];
        }
        c.mean_x = wx / total;
        c.mean_y = wy / total;

        std::vector<double> sorted(d.begin(), d.end());
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        double acc = 0.0;
        c.level95 = sorted.back();
        for (double v : sorted) {
            acc += v;
            if (acc >= 0.95 * total) {
                c.level95 = v;
                break;
            }
        }
        report.groups.push_back(std::move(c));
    }
    return report;
}

} // namespace pqcdse
