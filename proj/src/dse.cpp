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
#include "pqcdse/dse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <Eigen/Dense>

namespace pqcdse {

using nlohmann::json;

namespace {

constexpr std::size_t kIn = ScoreRegressor::kInputs;
constexpr std::size_t kH = ScoreRegressor::kHidden;

// Flat parameter layout.
constexpr std::size_t kW1 = 0;
constexpr std::size_t kB1 = kW1 + kH * kIn;
constexpr std::size_t kW2 = kB1 + kH;
constexpr std::size_t kB2 = kW2 + kH * kH;
constexpr std::size_t kW3 = kB2 + kH;
constexpr std::size_t kB3 = kW3 + kH;

double coord_of(const DesignPoint &p, Coord c) { return p.coords()[static_cast<std::size_t>(c)]; }

} // namespace

GateSetIndex::GateSetIndex(std::span<const CircuitTemplate> catalog) {
    std::set<std::string> labels;
    for (const auto &t : catalog) {
        labels.insert(t.gate_set_label());
    }
    labels_.assign(labels.begin(), labels.end());
}

int GateSetIndex::ordinal(const std::string &label) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) {
        throw std::invalid_argument("gate set '" + label + "' not in the catalog enumeration");
    }
    return static_cast<int>(it - labels_.begin());
}

const std::string &GateSetIndex::label(int ordinal) const {
    if (ordinal < 0 || static_cast<std::size_t>(ordinal) >= labels_.size()) {
        throw std::invalid_argument("gate-set ordinal out of range");
    }
    return labels_[static_cast<std::size_t>(ordinal)];
}

DesignPoint encode(const CircuitTemplate &t, int layers, const GateSetIndex &index) {
    if (layers < 1) {
        throw std::invalid_argument("encode: layers must be >= 1");
    }
    return {layers, static_cast<int>(t.connectivity), index.ordinal(t.gate_set_label()), t.id};
}

DecodedDesign decode(const DesignPoint &p, const GateSetIndex &index) {
    if (p.connectivity_ord < 0 || p.connectivity_ord > 3) {
        throw std::invalid_argument("decode: connectivity ordinal out of range");
    }
    return {p.layers, static_cast<Connectivity>(p.connectivity_ord), index.label(p.gate_set_ord)};
}

std::string_view to_string(Coord c) {
    switch (c) {
    case Coord::Layers:
        return "layers";
    case Coord::Connectivity:
        return "connectivity";
    case Coord::GateSet:
        return "gate_set";
    }
    return "?";
}

Coord parse_coord(std::string_view name) {
    for (Coord c : {Coord::Layers, Coord::Connectivity, Coord::GateSet}) {
        if (to_string(c) == name) {
            return c;
        }
    }
    throw std::invalid_argument("unknown design coordinate '" + std::string(name) + "'");
}

void AxisMapping::validate() const {
    if (x == y || y == z || x == z) {
        throw std::invalid_argument("axis mapping must use each design coordinate once");
    }
}

std::size_t monomial_count(int degree) {
    if (degree < 0) {
        throw std::invalid_argument("polynomial degree must be >= 0");
    }
    const auto d = static_cast<std::size_t>(degree);
    return (d + 1) * (d + 2) / 2;
}

std::vector<double> monomials(double x, double y, int degree) {
    std::vector<double> m;
    m.reserve(monomial_count(degree));
    for (int total = 0; total <= degree; ++total) {
        for (int b = 0; b <= total; ++b) {
            m.push_back(std::pow(x, total - b) * std::pow(y, b));
        }
    }
    return m;
}

double SurfaceFit::evaluate(double x, double y) const {
    const auto m = monomials(x, y, degree);
    double z = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        z += coefficients[i] * m[i];
    }
    return z;
}

SurfaceFit fit_surface_xyz(std::span<const double> x, std::span<const double> y,
                           std::span<const double> z, int degree) {
    const std::size_t n = x.size();
    const std::size_t k = monomial_count(degree);
    if (y.size() != n || z.size() != n) {
        throw std::invalid_argument("fit_surface: coordinate length mismatch");
    }
    if (n < k) {
        throw std::invalid_argument("fit_surface: degree " + std::to_string(degree) + " needs " +
                                    std::to_string(k) + " points, got " + std::to_string(n));
    }
    Eigen::MatrixXd a(n, k);
    Eigen::VectorXd b(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto m = monomials(x[i], y[i], degree);
        for (std::size_t j = 0; j < k; ++j) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[j];
        }
        b(static_cast<Eigen::Index>(i)) = z[i];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-10);
    if (static_cast<std::size_t>(qr.rank()) < k) {
        throw RankDeficientError("fit_surface: design matrix has rank " + std::to_string(qr.rank()) +
                                 " < " + std::to_string(k) + " monomials for degree " +
                                 std::to_string(degree) + " (points do not span the (x, y) plane)");
    }
    const Eigen::VectorXd c = qr.solve(b);

    SurfaceFit s;
    s.degree = degree;
    s.coefficients.assign(c.data(), c.data() + c.size());
    s.residual_rms = std::sqrt((a * c - b).squaredNorm() / static_cast<double>(n));
    s.x_min = *std::min_element(x.begin(), x.end());
    s.x_max = *std::max_element(x.begin(), x.end());
    s.y_min = *std::min_element(y.begin(), y.end());
    s.y_max = *std::max_element(y.begin(), y.end());
    return s;
}

SurfaceFit fit_surface(std::span<const DesignPoint> points, int degree, AxisMapping axes) {
    axes.validate();
    std::vector<double> x, y, z;
    for (const auto &p : points) {
        x.push_back(coord_of(p, axes.x));
        y.push_back(coord_of(p, axes.y));
        z.push_back(coord_of(p, axes.z));
    }
    auto s = fit_surface_xyz(x, y, z, degree);
    s.axes = axes;
    return s;
}

ScoreRegressor::ScoreRegressor() : params_(parameter_count(), 0.0) {}

void ScoreRegressor::initialize(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto glorot = [&](std::size_t offset, std::size_t fan_out, std::size_t fan_in) {
        const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        for (std::size_t i = 0; i < fan_out * fan_in; ++i) {
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            params_[offset + i] = (2.0 * u - 1.0) * limit;
        }
    };
    std::fill(params_.begin(), params_.end(), 0.0);
    glorot(kW1, kH, kIn);
    glorot(kW2, kH, kH);
    glorot(kW3, 1, kH);
    mean_ = {0.0, 0.0, 0.0};
    std_ = {1.0, 1.0, 1.0};
}

void ScoreRegressor::fit_standardization(std::span<const std::array<double, 3>> inputs) {
    if (inputs.empty()) {
        throw std::invalid_argument("standardization needs at least one sample");
    }
    const double n = static_cast<double>(inputs.size());
    for (std::size_t d = 0; d < kIn; ++d) {
        double m = 0.0;
        for (const auto &v : inputs) {
            m += v[d];
        }
        m /= n;
        double var = 0.0;
        for (const auto &v : inputs) {
            var += (v[d] - m) * (v[d] - m);
        }
        var /= n;
        if (!(var > 0.0)) {
            throw std::invalid_argument("train_regressor: input coordinate " + std::to_string(d) +
                                        " has zero variance");
        }
        mean_[d] = m;
        std_[d] = std::sqrt(var);
    }
}

std::array<double, 3> ScoreRegressor::standardize(const std::array<double, 3> &raw) const {
    return {(raw[0] - mean_[0]) / std_[0], (raw[1] - mean_[1]) / std_[1],
            (raw[2] - mean_[2]) / std_[2]};
}

double ScoreRegressor::forward(const std::array<double, 3> &z) const {
    const double *p = params_.data();
    std::array<double, kH> h1{}, h2{};
    for (std::size_t j = 0; j < kH; ++j) {
        double a = p[kB1 + j];
        for (std::size_t i = 0; i < kIn; ++i) {
            a += p[kW1 + j * kIn + i] * z[i];
        }
        h1[j] = std::tanh(a);
    }
    for (std::size_t j = 0; j < kH; ++j) {
        double a = p[kB2 + j];
        for (std::size_t i = 0; i < kH; ++i) {
            a += p[kW2 + j * kH + i] * h1[i];
        }
        h2[j] = std::tanh(a);
    }
    double out = p[kB3];
    for (std::size_t i = 0; i < kH; ++i) {
        out += p[kW3 + i] * h2[i];
    }
    return out;
}

double ScoreRegressor::predict(const std::array<double, 3> &raw) const {
    return forward(standardize(raw));
}

double ScoreRegressor::loss(std::span<const std::array<double, 3>> standardized,
                            std::span<const double> targets, std::span<double> grad) const {
    const std::size_t n = standardized.size();
    const bool want_grad = !grad.empty();
    if (want_grad) {
        std::fill(grad.begin(), grad.end(), 0.0);
    }
    const double *p = params_.data();
    double total = 0.0;
    std::array<double, kH> h1{}, h2{}, d2{}, d1{};
    for (std::size_t s = 0; s < n; ++s) {
        const auto &z = standardized[s];
        for (std::size_t j = 0; j < kH; ++j) {
            double a = p[kB1 + j];
            for (std::size_t i = 0; i < kIn; ++i) {
                a += p[kW1 + j * kIn + i] * z[i];
            }
            h1[j] = std::tanh(a);
        }
        for (std::size_t j = 0; j < kH; ++j) {
            double a = p[kB2 + j];
            for (std::size_t i = 0; i < kH; ++i) {
                a += p[kW2 + j * kH + i] * h1[i];
            }
            h2[j] = std::tanh(a);
        }
        double out = p[kB3];
        for (std::size_t i = 0; i < kH; ++i) {
            out += p[kW3 + i] * h2[i];
        }
        const double err = out - targets[s];
        total += err * err;
        if (!want_grad) {
            continue;
        }
        const double dout = 2.0 * err / static_cast<double>(n);
        grad[kB3] += dout;
        for (std::size_t i = 0; i < kH; ++i) {
            grad[kW3 + i] += dout * h2[i];
            d2[i] = dout * p[kW3 + i] * (1.0 - h2[i] * h2[i]);
        }
        std::fill(d1.begin(), d1.end(), 0.0);
        for (std::size_t j = 0; j < kH; ++j) {
            grad[kB2 + j] += d2[j];
            for (std::size_t i = 0; i < kH; ++i) {
                grad[kW2 + j * kH + i] += d2[j] * h1[i];
                d1[i] += d2[j] * p[kW2 + j * kH + i];
            }
        }
        for (std::size_t j = 0; j < kH; ++j) {
            const double g = d1[j] * (1.0 - h1[j] * h1[j]);
            grad[kB1 + j] += g;
            for (std::size_t i = 0; i < kIn; ++i) {
                grad[kW1 + j * kIn + i] += g * z[i];
            }
        }
    }
    return total / static_cast<double>(n);
}

json ScoreRegressor::to_json() const {
    return {{"format_version", 1},
            {"architecture", {kIn, kH, kH, 1}},
            {"activation", "tanh"},
            {"input_mean", mean_},
            {"input_std", std_},
            {"train_mse", train_mse},
            {"parameters", params_}};
}

ScoreRegressor ScoreRegressor::from_json(const json &j) {
    if (j.at("format_version") != 1) {
        throw std::invalid_argument("regressor: unsupported format_version");
    }
    ScoreRegressor r;
    r.mean_ = j.at("input_mean").get<std::array<double, 3>>();
    r.std_ = j.at("input_std").get<std::array<double, 3>>();
    r.train_mse = j.at("train_mse").get<double>();
    r.params_ = j.at("parameters").get<std::vector<double>>();
    if (r.params_.size() != parameter_count()) {
        throw std::invalid_argument("regressor: wrong parameter count");
    }
    return r;
}

ScoreRegressor train_regressor(std::span<const TrainingSample> samples, const TrainConfig &cfg) {
    if (samples.size() < 2) {
        throw std::invalid_argument("train_regressor: need at least two samples");
    }
    std::vector<std::array<double, 3>> raw;
    std::vector<double> targets;
    for (const auto &s : samples) {
        raw.push_back(s.point.coords());
        targets.push_back(s.score);
    }
    ScoreRegressor reg;
    reg.initialize(cfg.seed);
    reg.fit_standardization(raw);
    std::vector<std::array<double, 3>> z;
    for (const auto &r : raw) {
        z.push_back(reg.standardize(r));
    }

    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    auto &p = reg.parameters();
    std::vector<double> grad(p.size()), m(p.size(), 0.0), v(p.size(), 0.0);
    double b1t = 1.0, b2t = 1.0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        reg.loss(z, targets, grad);
        b1t *= kBeta1;
        b2t *= kBeta2;
        for (std::size_t i = 0; i < p.size(); ++i) {
            m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * grad[i];
            v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * grad[i] * grad[i];
            const double mh = m[i] / (1.0 - b1t);
            const double vh = v[i] / (1.0 - b2t);
            p[i] -= cfg.learning_rate * mh / (std::sqrt(vh) + kEps);
        }
    }
    reg.train_mse = reg.loss(z, targets, {});
    return reg;
}

std::vector<GridRow> predict_grid(const ScoreRegressor &reg, const SurfaceFit &surface,
                                  int resolution) {
    if (resolution < 1) {
        throw std::invalid_argument("predict_grid: resolution must be >= 1");
    }
    const auto at = [resolution](double lo, double hi, int i) {
        return resolution == 1 ? lo : lo + (hi - lo) * i / (resolution - 1);
    };
    std::vector<GridRow> rows;
    rows.reserve(static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution));
    for (int iy = 0; iy < resolution; ++iy) {
        for (int ix = 0; ix < resolution; ++ix) {
            GridRow r;
            r.x = at(surface.x_min, surface.x_max, ix);
            r.y = at(surface.y_min, surface.y_max, iy);
            r.z = surface.evaluate(r.x, r.y);
            std::array<double, 3> design{};
            design[static_cast<std::size_t>(surface.axes.x)] = r.x;
            design[static_cast<std::size_t>(surface.axes.y)] = r.y;
            design[static_cast<std::size_t>(surface.axes.z)] = r.z;
            r.score_pred = reg.predict(design);
            rows.push_back(r);
        }
    }
    return rows;
}

json surface_to_json(const SurfaceFit &s) {
    return {{"format_version", 1},
            {"degree", s.degree},
            {"axes",
             {{"x", to_string(s.axes.x)}, {"y", to_string(s.axes.y)}, {"z", to_string(s.axes.z)}}},
            {"monomial_order", "graded: 1, x, y, x^2, xy, y^2, ..."},
            {"coefficients", s.coefficients},
            {"residual_rms", s.residual_rms},
            {"x_range", {s.x_min, s.x_max}},
            {"y_range", {s.y_min, s.y_max}}};
}

SurfaceFit surface_from_json(const json &j) {
    if (j.at("format_version") != 1) {
        throw std::invalid_argument("surface: unsupported format_version");
    }
    SurfaceFit s;
    s.degree = j.at("degree").get<int>();
    s.axes.x = parse_coord(j.at("axes").at("x").get<std::string>());
    s.axes.y = parse_coord(j.at("axes").at("y").get<std::string>());
    s.axes.z = parse_coord(j.at("axes").at("z").get<std::string>());
    s.coefficients = j.at("coefficients").get<std::vector<double>>();
    s.residual_rms = j.at("residual_rms").get<double>();
    const auto xr = j.at("x_range").get<std::array<double, 2>>();
    const auto yr = j.at("y_range").get<std::array<double, 2>>();
    s.x_min = xr[0];
    s.x_max = xr[1];
    s.y_min = yr[0];
    s.y_max = yr[1];
    if (s.coefficients.size() != monomial_count(s.degree)) {
        throw std::invalid_argument("surface: coefficient count does not match degree");
    }
    return s;
}

} // namespace pqcdse
