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
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqcdse/catalog.hpp"

namespace pqcdse {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// One row of the results table: a (circuit, layers, hamiltonian) evaluation.
struct MetricRecord {
    std::string circuit_id;
    int layers = 1;
    int n_qubits = 0;
    ResourceCounts resources;
    double dkl = kMissing;
    double expr_prime = kMissing;
    std::string hamiltonian_id;
    double trainability = kMissing;
    double cost = kMissing;
    double score = kMissing;
    std::uint64_t seed = 0;

    std::string instance_id() const { return circuit_id + "-L" + std::to_string(layers); }
};

struct CostWeights {
    double alpha = 1.0 / 3.0; // parameters
    double beta = 1.0 / 3.0;  // depth
    double gamma = 1.0 / 3.0; // two-qubit gates

    void validate() const;
};

struct Bounds {
    double min = 0.0;
    double max = 0.0;
};

/// Min-max bounds of each resource metric over a declared population.
struct NormalizationContext {
    Bounds n_params;
    Bounds depth;
    Bounds n_two_qubit;

    static NormalizationContext from_records(std::span<const MetricRecord> population);
    static NormalizationContext from_resources(std::span<const ResourceCounts> population);

    /// True when every resource lies inside the bounds.
    bool covers(const ResourceCounts &r) const;
};

/// (x - min) / (max - min); 0 when min == max.
double normalize(double x, Bounds bounds);

double cost(const ResourceCounts &r, const NormalizationContext &ctx, const CostWeights &w = {});

/// Fills record.cost for every record from a shared context.
void assign_costs(std::span<MetricRecord> records, const NormalizationContext &ctx,
                  const CostWeights &w = {});

/// trainability * expr_prime. Throws std::invalid_argument if either is missing.
double score(const MetricRecord &r);

enum class Field { ExprPrime, Trainability, Score, Cost, NParams, NTwoQubit, Depth, Dkl, Layers };
enum class Direction { Maximize, Minimize };

std::string_view to_string(Field f);
std::optional<Field> parse_field(std::string_view name);

/// Throws std::invalid_argument when the field is missing (NaN) on the record.
double field_value(const MetricRecord &r, Field f);

struct Objective {
    Field field;
    Direction direction;
};

using Constraint = std::function<bool(const MetricRecord &)>;

/// Constraint "cost <= limit".
Constraint cost_at_most(double limit);

/// Indices of the non-dominated records among those passing the constraint.
/// Ties on every objective are all kept. Output is sorted by the first
/// objective (ascending) with instance id as the tie-break, so the result does
/// not depend on input order.
std::vector<std::size_t> pareto_front_indices(std::span<const MetricRecord> records,
                                              std::span<const Objective> objectives,
                                              const Constraint &constraint = {});

std::vector<MetricRecord> pareto_front(std::span<const MetricRecord> records,
                                       std::span<const Objective> objectives,
                                       const Constraint &constraint = {});

/// Parameter excess of `record` over the linear interpolation of the
/// (min n_params, max expr_prime) front at the record's expr_prime. Absent when
/// the front has fewer than two points or the record lies outside its
/// expr_prime range.
std::optional<double> redundancy(const MetricRecord &record, std::span<const MetricRecord> front);

/// Sample Pearson correlation. Throws std::invalid_argument on length mismatch,
/// n < 2, or zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Records sorted by descending score, ties by instance id.
std::vector<MetricRecord> rank_by_score(std::span<const MetricRecord> records);

struct KdeGrid {
    std::vector<double> xs; // grid coordinates, size resolution
    std::vector<double> ys;
    std::vector<double> density; // row-major [iy][ix]
};

struct LayerCentroid {
    int layers = 0;
    std::size_t n_records = 0;
    double mode_x = 0.0; // grid argmax of the density
    double mode_y = 0.0;
    double mean_x = 0.0; // density-weighted mean over the grid
    double mean_y = 0.0;
    double level95 = 0.0; // density level enclosing 95% of the grid mass
    KdeGrid grid;
};

struct CentroidReport {
    std::vector<LayerCentroid> groups;
    std::vector<int> skipped_layers; // groups with fewer than 2 records
};

/// Gaussian 2-D KDE per layer group (Scott bandwidth, full covariance) on a
/// resolution x resolution grid spanning the data range padded by 10%.
CentroidReport layer_centroids(std::span<const MetricRecord> records, Field x, Field y,
                               std::size_t resolution = 100);

/// KDE of raw 2-D points on an explicit grid; exposed for testing.
KdeGrid kde_2d(std::span<const double> x, std::span<const double> y, std::span<const double> gx,
               std::span<const double> gy);

} // namespace pqcdse
