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
#include "pqcdse/expressibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pqcdse/rng.hpp"
#include "pqcdse/simulate.hpp"

namespace pqcdse {

namespace {

double pair_fidelity(const Circuit &circuit, std::uint64_t seed, std::vector<double> &theta,
                     StateVector &a, StateVector &b) {
    AngleSampler rng(seed);
    rng.fill(theta);
    run_circuit_into(circuit, theta, a);
    rng.fill(theta);
    run_circuit_into(circuit, theta, b);
    return fidelity(a, b);
}

void check_args(std::size_t n_pairs, std::size_t n_bins) {
    if (n_pairs < 1) {
        throw std::invalid_argument("expressibility: n_pairs must be >= 1");
    }
    if (n_bins < 1) {
        throw std::invalid_argument("expressibility: n_bins must be >= 1");
    }
}

} // namespace

double haar_pdf(double fidelity, std::size_t dim) {
    if (dim < 2) {
        throw std::invalid_argument("haar_pdf: dimension must be >= 2");
    }
    if (fidelity < 0.0 || fidelity > 1.0) {
        throw std::invalid_argument("haar_pdf: fidelity outside [0,1]");
    }
    const double n = static_cast<double>(dim);
    return (n - 1.0) * std::pow(1.0 - fidelity, n - 2.0);
}

std::vector<double> haar_bin_masses(std::size_t n_bins, std::size_t dim) {
    if (n_bins < 1) {
        throw std::invalid_argument("haar_bin_masses: n_bins must be >= 1");
    }
    if (dim < 2) {
        throw std::invalid_argument("haar_bin_masses: dimension must be >= 2");
    }
    const double e = static_cast<double>(dim) - 1.0;
    const double b = static_cast<double>(n_bins);
    std::vector<double> masses(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) {
        const double lo = 1.0 - static_cast<double>(k) / b;
        const double hi = 1.0 - static_cast<double>(k + 1) / b;
        masses[k] = std::pow(lo, e) - std::pow(hi, e);
    }
    return masses;
}

std::size_t fidelity_bin(double fidelity, std::size_t n_bins) {
    const double f = std::clamp(fidelity, 0.0, 1.0);
    const auto k = static_cast<std::size_t>(f * static_cast<double>(n_bins));
    return std::min(k, n_bins - 1);
}

FidelityHistogram histogram_from(std::span<const double> fidelities, std::size_t n_bins) {
    FidelityHistogram h;
    h.counts.assign(n_bins, 0);
    for (double f : fidelities) {
        ++h.counts[fidelity_bin(f, n_bins)];
    }
    h.n_samples = fidelities.size();
    return h;
}

FidelityHistogram sample_fidelity_histogram(const Circuit &circuit, std::size_t n_pairs,
                                            std::size_t n_bins, std::uint64_t seed) {
    check_args(n_pairs, n_bins);
    std::vector<double> fid(n_pairs);
#pragma omp parallel
    {
        std::vector<double> theta(circuit.n_params);
        StateVector a(circuit.n_qubits);
        StateVector b(circuit.n_qubits);
#pragma omp for schedule(static)
        for (std::size_t k = 0; k < n_pairs; ++k) {
            fid[k] = pair_fidelity(circuit, sample_seed(seed, k), theta, a, b);
        }
    }
    return histogram_from(fid, n_bins);
}

FidelityHistogram sample_fidelity_histogram_serial(const Circuit &circuit, std::size_t n_pairs,
                                                   std::size_t n_bins, std::uint64_t seed) {
    check_args(n_pairs, n_bins);
    std::vector<double> fid(n_pairs);
    std::vector<double> theta(circuit.n_params);
    StateVector a(circuit.n_qubits);
    StateVector b(circuit.n_qubits);
    for (std::size_t k = 0; k < n_pairs; ++k) {
        fid[k] = pair_fidelity(circuit, sample_seed(seed, k), theta, a, b);
    }
    return histogram_from(fid, n_bins);
}

double kl_divergence(const FidelityHistogram &hist, std::span<const double> haar_masses) {
    if (hist.counts.size() != haar_masses.size()) {
        throw std::invalid_argument("kl_divergence: bin count mismatch");
    }
    if (hist.n_samples == 0) {
        throw std::invalid_argument("kl_divergence: empty histogram");
    }
    const double total = static_cast<double>(hist.n_samples);
    double dkl = 0.0;
    for (std::size_t k = 0; k < haar_masses.size(); ++k) {
        if (!(haar_masses[k] > 0.0)) {
            throw std::invalid_argument("kl_divergence: reference mass must be positive");
        }
        if (hist.counts[k] == 0) {
            continue;
        }
        const double p = static_cast<double>(hist.counts[k]) / total;
        dkl += p * std::log(p / haar_masses[k]);
    }
    // Identical distributions can round to -1e-17.
    return std::max(dkl, 0.0);
}

ExpressibilityResult expressibility_from_histogram(const FidelityHistogram &hist,
                                                   std::size_t dim, std::uint64_t seed) {
    ExpressibilityResult r;
    r.n_pairs = hist.n_samples;
    r.n_bins = hist.n_bins();
    r.seed = seed;
    r.dkl = kl_divergence(hist, haar_bin_masses(hist.n_bins(), dim));
    double d = r.dkl;
    if (d < kDklFloor) {
        d = kDklFloor;
        r.dkl_clamped = true;
    }
    r.expr_prime = -std::log10(d);
    return r;
}

ExpressibilityResult expressibility(const Circuit &circuit, std::size_t n_pairs,
                                    std::size_t n_bins, std::uint64_t seed) {
    const auto hist = sample_fidelity_histogram(circuit, n_pairs, n_bins, seed);
    return expressibility_from_histogram(hist, std::size_t{1} << circuit.n_qubits, seed);
}

} // namespace pqcdse
