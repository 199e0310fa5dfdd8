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
#include <vector>

#include "pqcdse/catalog.hpp"

namespace pqcdse {

inline constexpr std::size_t kDefaultPairs = 5000;
inline constexpr std::size_t kDefaultBins = 75;
inline constexpr double kDklFloor = 1e-12;

struct FidelityHistogram {
    std::vector<std::uint64_t> counts; // uniform bins on [0,1], last bin right-closed
    std::uint64_t n_samples = 0;

    std::size_t n_bins() const noexcept { return counts.size(); }
    bool operator==(const FidelityHistogram &) const = default;
};

struct ExpressibilityResult {
    double dkl = 0.0;
    double expr_prime = 0.0;
    bool dkl_clamped = false;
    std::size_t n_pairs = 0;
    std::size_t n_bins = 0;
    std::uint64_t seed = 0;
};

/// Haar pairwise-fidelity density (N-1)(1-F)^(N-2) in Hilbert dimension N.
double haar_pdf(double fidelity, std::size_t dim);

/// Exact Haar probability of each uniform fidelity bin:
/// (1 - k/B)^(N-1) - (1 - (k+1)/B)^(N-1).
std::vector<double> haar_bin_masses(std::size_t n_bins, std::size_t dim);

/// Bin index of a fidelity value; F = 1 lands in the last bin.
std::size_t fidelity_bin(double fidelity, std::size_t n_bins);

FidelityHistogram histogram_from(std::span<const double> fidelities, std::size_t n_bins);

/// Draws n_pairs independent parameter pairs uniform on [0, 2pi)^P and bins the
/// state fidelities. Pair k uses sample_seed(seed, k), so the histogram is a
/// function of (circuit, n_pairs, n_bins, seed) alone. OpenMP-parallel over pairs.
FidelityHistogram sample_fidelity_histogram(const Circuit &circuit, std::size_t n_pairs,
                                            std::size_t n_bins, std::uint64_t seed);

/// Single-threaded reference for sample_fidelity_histogram.
FidelityHistogram sample_fidelity_histogram_serial(const Circuit &circuit, std::size_t n_pairs,
                                                   std::size_t n_bins, std::uint64_t seed);

/// sum_k p_k ln(p_k / q_k) over bins with p_k > 0.
double kl_divergence(const FidelityHistogram &hist, std::span<const double> haar_masses);

/// Full estimate: histogram, KL against the Haar masses, Expr' = -log10(dkl)
/// with dkl floored at kDklFloor.
ExpressibilityResult expressibility(const Circuit &circuit, std::size_t n_pairs = kDefaultPairs,
                                    std::size_t n_bins = kDefaultBins, std::uint64_t seed = 0);

ExpressibilityResult expressibility_from_histogram(const FidelityHistogram &hist,
                                                   std::size_t dim, std::uint64_t seed);

} // namespace pqcdse
