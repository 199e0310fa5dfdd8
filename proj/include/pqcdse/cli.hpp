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
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqcdse/catalog.hpp"
#include "pqcdse/dse.hpp"
#include "pqcdse/pareto.hpp"

namespace pqcdse {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Invalid configuration; maps to exit code 2.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::filesystem::path catalog;
    std::vector<std::string> hamiltonians{"tfim"};
    int qubits = 4;
    std::vector<int> layers{1, 2, 3};
    std::size_t n_pairs = 5000;
    std::size_t n_bins = 75;
    std::size_t n_samples = 500;
    std::uint64_t seed = 1;
    CostWeights weights;
    std::vector<double> constraints{0.2, 0.1};
    std::filesystem::path out_dir = "out";
    int threads = 0; // 0 keeps the OpenMP default

    /// Throws UsageError.
    void validate() const;
};

/// Seeds of one (circuit, layers) instance.
struct InstanceSeeds {
    std::uint64_t expressibility = 0;
    std::uint64_t trainability = 0;
};

InstanceSeeds instance_seeds(std::uint64_t master_seed, std::string_view circuit_id, int layers);

using LogSink = std::function<void(const std::string &)>;

/// Normalization context over every (template, layers) instance of the run.
NormalizationContext population_context(std::span<const CircuitTemplate> catalog,
                                        std::span<const int> layers);

/// One record per (template, layers, hamiltonian) in (circuit_id, layers,
/// hamiltonian order) order, with cost and score assigned. Completed records
/// are appended to *completed as they finish so a failed run can keep them.
std::vector<MetricRecord> evaluate_catalog(std::span<const CircuitTemplate> catalog,
                                           const RunConfig &cfg, const LogSink &log = {},
                                           std::vector<MetricRecord> *completed = nullptr);

struct LabelledFront {
    std::string label;
    std::vector<Objective> objectives;
    double max_cost = kMissing; // NaN for an unconstrained front
    std::vector<MetricRecord> members;
};

std::string objective_label(const Objective &o);

/// Unconstrained plus one per constraint, maximizing expr_prime and trainability.
std::vector<LabelledFront> expr_train_fronts(std::span<const MetricRecord> records,
                                             std::span<const double> constraints);

/// (n_params | n_2q | depth) min vs expr_prime max.
std::vector<LabelledFront> expr_cost_fronts(std::span<const MetricRecord> records);

struct RedundancyRow {
    MetricRecord record;
    std::optional<double> value;
};

/// Sorted by redundancy descending; undefined values last.
std::vector<RedundancyRow> redundancy_ranking(std::span<const MetricRecord> records);

struct SurfaceOutcome {
    std::string label;
    int requested_degree = 2;
    int degree = 2;
    std::string downgrade_reason; // empty when the requested degree was used
    std::vector<DesignPoint> points;
    SurfaceFit fit;
};

/// Fits at the requested degree and falls back to degree 1 when there are too
/// few points or the design matrix is rank deficient. Throws when degree 1 fails.
SurfaceOutcome fit_front_surface(const std::string &label, std::span<const DesignPoint> points,
                                 int degree, AxisMapping axes);

std::vector<DesignPoint> encode_records(std::span<const MetricRecord> records,
                                        std::span<const CircuitTemplate> catalog,
                                        const GateSetIndex &index);

/// Command-line entry point; returns the process exit code.
int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err);

} // namespace pqcdse
