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
#include <numbers>
#include <random>
#include <span>
#include <string_view>

namespace pqcdse {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t h = 0xCBF29CE484222325ULL) noexcept {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Seed of one (circuit, layers, metric) job. Independent of scheduling order.
constexpr std::uint64_t job_seed(std::uint64_t master_seed, std::string_view circuit_id,
                                 int layers, std::string_view metric) noexcept {
    std::uint64_t h = splitmix64(master_seed);
    h = fnv1a64(circuit_id, h);
    h = splitmix64(h ^ static_cast<std::uint64_t>(layers));
    h = fnv1a64(metric, h);
    return splitmix64(h);
}

/// Seed of sample `index` inside a job; each sample owns its own stream so the
/// result does not depend on how samples are split across threads.
constexpr std::uint64_t sample_seed(std::uint64_t job, std::uint64_t index) noexcept {
    return splitmix64(job ^ splitmix64(index + 0x5851F42D4C957F2DULL));
}

/// Uniform angles on [0, 2pi) from a mt19937_64 stream. The conversion uses the
/// top 53 bits directly so the values are the same on every standard library.
class AngleSampler {
  public:
    explicit AngleSampler(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double angle() { return uniform01() * 2.0 * std::numbers::pi; }

    void fill(std::span<double> out) {
        for (auto &v : out) {
            v = angle();
        }
    }

    std::mt19937_64 &engine() noexcept { return engine_; }

  private:
    std::mt19937_64 engine_;
};

} // namespace pqcdse
