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

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqcdse/catalog.hpp"

namespace pqcdse {

/// Architectural coordinates of one circuit instance.
struct DesignPoint {
    int layers = 1;
    int connectivity_ord = 0; // none=0, linear=1, circular=2, all_to_all=3
    int gate_set_ord = 0;     // index into GateSetIndex::labels()
    std::string circuit_id;

    std::array<double, 3> coords() const {
        return {static_cast<double>(layers), static_cast<double>(connectivity_ord),
                static_cast<double>(gate_set_ord)};
    }
};

/// Lexicographically sorted distinct gate-set labels of a catalog.
class GateSetIndex {
  public:
    explicit GateSetIndex(std::span<const CircuitTemplate> catalog);

    int ordinal(const std::string &label) const;
    const std::string &label(int ordinal) const;
    const std::vector<std::string> &labels() const noexcept { return labels_; }

  private:
    std::vector<std::string> labels_;
};

DesignPoint encode(const CircuitTemplate &t, int layers, const GateSetIndex &index);

struct DecodedDesign {
    int layers = 1;
    Connectivity connectivity = Connectivity::None;
    std::string gate_set_label;

    bool operator==(const DecodedDesign &) const = default;
};

DecodedDesign decode(const DesignPoint &p, const GateSetIndex &index);

enum class Coord { Layers = 0, Connectivity = 1, GateSet = 2 };

std::string_view to_string(Coord c);
Coord parse_coord(std::string_view name);

/// Which design coordinates act as the surface's x, y and z.
struct AxisMapping {
    Coord x = Coord::Layers;
    Coord y = Coord::Connectivity;
    Coord z = Coord::GateSet;

    void validate() const;
};

class RankDeficientError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Number of monomials x^a y^b with a + b <= degree.
std::size_t monomial_count(int degree);

/// Monomials in graded order: 1, x, y, x^2, xy, y^2, x^3, ...
std::vector<double> monomials(double x, double y, int degree);

/// Least-squares polynomial surface z = g(x, y).
struct SurfaceFit {
    int degree = 1;
    AxisMapping axes;
    std::vector<double> coefficients;
    double residual_rms = 0.0;
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;

    double evaluate(double x, double y) const;
};

/// Throws std::invalid_argument when there are fewer points than coefficients
/// and RankDeficientError when the design matrix is rank deficient.
SurfaceFit fit_surface_xyz(std::span<const double> x, std::span<const double> y,
                           std::span<const double> z, int degree);
SurfaceFit fit_surface(std::span<const DesignPoint> points, int degree, AxisMapping axes = {});

struct TrainConfig {
    double learning_rate = 0.01;
    int epochs = 5000;
    std::uint64_t seed = 0;
};

/// 3 -> 32 -> 32 -> 1 perceptron with tanh hidden units and a linear head,
/// trained on standardized inputs.
class ScoreRegressor {
  public:
    static constexpr std::size_t kInputs = 3;
    static constexpr std::size_t kHidden = 32;

    ScoreRegressor();

    /// Glorot-uniform weights from the seed, zero biases, identity standardization.
    void initialize(std::uint64_t seed);

    /// Sets the standardization from raw training inputs (population std).
    /// Throws std::invalid_argument on a zero-variance coordinate.
    void fit_standardization(std::span<const std::array<double, 3>> inputs);

    std::array<double, 3> standardize(const std::array<double, 3> &raw) const;

    double predict(const std::array<double, 3> &raw) const;
    double predict(const DesignPoint &p) const { return predict(p.coords()); }

    /// Mean squared error on standardized inputs; writes dLoss/dparams when
    /// grad is non-empty (same layout as parameters()).
    double loss(std::span<const std::array<double, 3>> standardized, std::span<const double> targets,
                std::span<double> grad) const;

    std::vector<double> &parameters() noexcept { return params_; }
    const std::vector<double> &parameters() const noexcept { return params_; }
    static constexpr std::size_t parameter_count() {
        return kHidden * kInputs + kHidden + kHidden * kHidden + kHidden + kHidden + 1;
    }

    const std::array<double, 3> &input_mean() const noexcept { return mean_; }
    const std::array<double, 3> &input_std() const noexcept { return std_; }

    double train_mse = 0.0;

    nlohmann::json to_json() const;
    static ScoreRegressor from_json(const nlohmann::json &j);

  private:
    double forward(const std::array<double, 3> &z) const;

    std::array<double, 3> mean_{0.0, 0.0, 0.0};
    std::array<double, 3> std_{1.0, 1.0, 1.0};
    std::vector<double> params_;
};

struct TrainingSample {
    DesignPoint point;
    double score = 0.0;
};

/// Full-batch Adam on mean squared error.
ScoreRegressor train_regressor(std::span<const TrainingSample> samples, const TrainConfig &cfg = {});

struct GridRow {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double score_pred = 0.0;
};

/// resolution x resolution samples of the surface's (x, y) rectangle, lifted to
/// z by the surface and scored by the regressor.
std::vector<GridRow> predict_grid(const ScoreRegressor &reg, const SurfaceFit &surface,
                                  int resolution);

nlohmann::json surface_to_json(const SurfaceFit &s);
SurfaceFit surface_from_json(const nlohmann::json &j);

} // namespace pqcdse
