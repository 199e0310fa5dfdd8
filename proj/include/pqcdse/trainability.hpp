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
#include <span>
#include <string>
#include <vector>

#include "pqcdse/catalog.hpp"
#include "pqcdse/observables.hpp"

namespace pqcdse {

inline constexpr std::size_t kDefaultGradSamples = 500;

/// E(theta) = <psi_theta|H|psi_theta>.
double energy(const Circuit &circuit, const Observable &obs, std::span<const double> theta);

/// Exact gradient of E by the parameter-shift rule. Single-qubit rotations use
/// the two-term rule with shift pi/2; CRX/CRZ use the four-term rule with
/// shifts pi/2 and 3pi/2.
std::vector<double> gradient(const Circuit &circuit, const Observable &obs,
                             std::span<const double> theta);

/// Derivatives at n_samples uniform random points, row-major [sample][param].
struct GradientSamples {
    std::size_t n_samples = 0;
    std::size_t n_params = 0;
    std::vector<double> values;

    double at(std::size_t sample, std::size_t param) const {
        return values[sample * n_params + param];
    }
    bool operator==(const GradientSamples &) const = default;
};

/// OpenMP-parallel over samples; sample i draws its angles from sample_seed(seed, i).
GradientSamples sample_gradients(const Circuit &circuit, const Observable &obs,
                                 std::size_t n_samples, std::uint64_t seed);
GradientSamples sample_gradients_serial(const Circuit &circuit, const Observable &obs,
                                        std::size_t n_samples, std::uint64_t seed);

struct TrainabilityResult {
    double mean_variance = 0.0;
    std::vector<double> per_param_variance; // uncentered: mean of squared derivatives
    std::size_t n_samples = 0;
    std::string hamiltonian_id;
    std::uint64_t seed = 0;
};

TrainabilityResult trainability_from_samples(const GradientSamples &g);

/// Mean over parameters of the mean squared derivative. Throws
/// std::invalid_argument for parameterless circuits or n_samples < 2.
TrainabilityResult trainability(const Circuit &circuit, const Observable &obs,
                                std::size_t n_samples = kDefaultGradSamples,
                                std::uint64_t seed = 0, std::string hamiltonian_id = {});

/// Per-parameter sample mean of the derivative.
std::vector<double> landscape_bias_from_samples(const GradientSamples &g);
std::vector<double> landscape_bias(const Circuit &circuit, const Observable &obs,
                                   std::size_t n_samples, std::uint64_t seed);

} // namespace pqcdse
