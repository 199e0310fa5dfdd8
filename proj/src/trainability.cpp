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
#include "pqcdse/trainability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pqcdse/rng.hpp"
#include "pqcdse/simulate.hpp"

namespace pqcdse {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kFourTermPlus = (kSqrt2 + 1.0) / (4.0 * kSqrt2);
const double kFourTermMinus = (kSqrt2 - 1.0) / (4.0 * kSqrt2);

/// Reusable buffers for one thread: states cached before every parametrized
/// gate so each shifted evaluation only replays the suffix.
class ShiftEvaluator {
  public:
    ShiftEvaluator(const Circuit &circuit, const Observable &obs)
        : circuit_(circuit), obs_(obs), gate_of_slot_(circuit.n_params),
          work_(circuit.n_qubits) {
        for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
            if (const auto slot = circuit.gates[i].param_slot) {
                gate_of_slot_[*slot] = i;
            }
        }
        prefix_.assign(circuit.n_params, StateVector(circuit.n_qubits));
    }

    void gradient(std::span<const double> theta, std::span<double> out) {
        // Forward pass, snapshotting the state in front of each parametrized gate.
        StateVector s(circuit_.n_qubits);
        const auto amps = s.amplitudes();
        for (std::size_t i = 0; i < circuit_.gates.size(); ++i) {
            const Gate &g = circuit_.gates[i];
            if (g.param_slot) {
                prefix_[*g.param_slot] = s;
            }
            const double angle = g.param_slot ? theta[*g.param_slot] : 0.0;
            apply_gate_unchecked(amps, circuit_.n_qubits, g.kind, g.qubits[0],
                                 g.qubits.size() > 1 ? g.qubits[1] : -1, angle);
        }
        shifted_.assign(theta.begin(), theta.end());
        for (std::size_t k = 0; k < circuit_.n_params; ++k) {
            const Gate &g = circuit_.gates[gate_of_slot_[k]];
            const double t = theta[k];
            if (is_controlled_rotation(g.kind)) {
                const double d1 = shifted(k, t + kHalfPi) - shifted(k, t - kHalfPi);
                const double d3 = shifted(k, t + 3.0 * kHalfPi) - shifted(k, t - 3.0 * kHalfPi);
                out[k] = kFourTermPlus * d1 - kFourTermMinus * d3;
            } else {
                out[k] = 0.5 * (shifted(k, t + kHalfPi) - shifted(k, t - kHalfPi));
            }
            shifted_[k] = t;
        }
    }

  private:
    double shifted(std::size_t slot, double angle) {
        shifted_[slot] = angle;
        work_ = prefix_[slot];
        run_gates_from(circuit_, gate_of_slot_[slot], shifted_, work_);
        return expectation(work_, obs_);
    }

    const Circuit &circuit_;
    const Observable &obs_;
    std::vector<std::size_t> gate_of_slot_;
    std::vector<StateVector> prefix_;
    std::vector<double> shifted_;
    StateVector work_;
};

void check_compatible(const Circuit &circuit, const Observable &obs) {
    if (circuit.n_qubits != obs.n_qubits()) {
        throw std::invalid_argument("observable acts on " + std::to_string(obs.n_qubits()) +
                                    " qubits, circuit has " + std::to_string(circuit.n_qubits));
    }
}

void check_sampling(const Circuit &circuit, std::size_t n_samples) {
    if (circuit.n_params == 0) {
        throw std::invalid_argument("trainability undefined for parameterless circuit " +
                                    circuit.instance_id());
    }
    if (n_samples < 2) {
        throw std::invalid_argument("trainability: n_samples must be >= 2");
    }
}

void sample_row(ShiftEvaluator &eval, std::uint64_t seed, std::vector<double> &theta,
                std::span<double> row) {
    AngleSampler rng(seed);
    rng.fill(theta);
    eval.gradient(theta, row);
}

} // namespace

double energy(const Circuit &circuit, const Observable &obs, std::span<const double> theta) {
    check_compatible(circuit, obs);
    return expectation(run_circuit(circuit, theta), obs);
}

std::vector<double> gradient(const Circuit &circuit, const Observable &obs,
                             std::span<const double> theta) {
    check_compatible(circuit, obs);
    if (theta.size() != circuit.n_params) {
        throw std::invalid_argument("gradient: " + circuit.instance_id() + " expects " +
                                    std::to_string(circuit.n_params) + " parameters, got " +
                                    std::to_string(theta.size()));
    }
    std::vector<double> out(circuit.n_params);
    ShiftEvaluator eval(circuit, obs);
    eval.gradient(theta, out);
    return out;
}

GradientSamples sample_gradients(const Circuit &circuit, const Observable &obs,
                                 std::size_t n_samples, std::uint64_t seed) {
    check_compatible(circuit, obs);
    check_sampling(circuit, n_samples);
    GradientSamples g{n_samples, circuit.n_params,
                      std::vector<double>(n_samples * circuit.n_params)};
#pragma omp parallel
    {
        ShiftEvaluator eval(circuit, obs);
        std::vector<double> theta(circuit.n_params);
#pragma omp for schedule(static)
        for (std::size_t i = 0; i < n_samples; ++i) {
            sample_row(eval, sample_seed(seed, i), theta,
                       std::span(g.values).subspan(i * g.n_params, g.n_params));
        }
    }
    return g;
}

GradientSamples sample_gradients_serial(const Circuit &circuit, const Observable &obs,
                                        std::size_t n_samples, std::uint64_t seed) {
    check_compatible(circuit, obs);
    check_sampling(circuit, n_samples);
    GradientSamples g{n_samples, circuit.n_params,
                      std::vector<double>(n_samples * circuit.n_params)};
    ShiftEvaluator eval(circuit, obs);
    std::vector<double> theta(circuit.n_params);
    for (std::size_t i = 0; i < n_samples; ++i) {
        sample_row(eval, sample_seed(seed, i), theta,
                   std::span(g.values).subspan(i * g.n_params, g.n_params));
    }
    return g;
}

TrainabilityResult trainability_from_samples(const GradientSamples &g) {
    TrainabilityResult r;
    r.n_samples = g.n_samples;
    r.per_param_variance.assign(g.n_params, 0.0);
    // Fixed summation order, samples outer.
    for (std::size_t i = 0; i < g.n_samples; ++i) {
        for (std::size_t k = 0; k < g.n_params; ++k) {
            const double d = g.at(i, k);
            r.per_param_variance[k] += d * d;
        }
    }
    double total = 0.0;
    for (auto &v : r.per_param_variance) {
        v /= static_cast<double>(g.n_samples);
        total += v;
    }
    r.mean_variance = g.n_params ? total / static_cast<double>(g.n_params) : 0.0;
    return r;
}

TrainabilityResult trainability(const Circuit &circuit, const Observable &obs,
                                std::size_t n_samples, std::uint64_t seed,
                                std::string hamiltonian_id) {
    auto r = trainability_from_samples(sample_gradients(circuit, obs, n_samples, seed));
    r.seed = seed;
    r.hamiltonian_id = std::move(hamiltonian_id);
    return r;
}

std::vector<double> landscape_bias_from_samples(const GradientSamples &g) {
    std::vector<double> mean(g.n_params, 0.0);
    for (std::size_t i = 0; i < g.n_samples; ++i) {
        for (std::size_t k = 0; k < g.n_params; ++k) {
            mean[k] += g.at(i, k);
        }
    }
    for (auto &m : mean) {
        m /= static_cast<double>(g.n_samples);
    }
    return mean;
}

std::vector<double> landscape_bias(const Circuit &circuit, const Observable &obs,
                                   std::size_t n_samples, std::uint64_t seed) {
    return landscape_bias_from_samples(sample_gradients(circuit, obs, n_samples, seed));
}

} // namespace pqcdse
