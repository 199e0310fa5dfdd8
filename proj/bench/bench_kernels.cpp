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
#include <benchmark/benchmark.h>

#include <omp.h>

#include "pqcdse/catalog.hpp"
#include "pqcdse/expressibility.hpp"
#include "pqcdse/observables.hpp"
#include "pqcdse/trainability.hpp"

namespace {

using namespace pqcdse;

const Circuit &bench_circuit() {
    static const Circuit c = [] {
        const auto cat = load_default_catalog();
        return instantiate(find_template(cat, "A05"), 3);
    }();
    return c;
}

void BM_FidelityHistogramSerial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_fidelity_histogram_serial(bench_circuit(), 500, 75, 7));
    }
}

void BM_FidelityHistogramParallel(benchmark::State &state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_fidelity_histogram(bench_circuit(), 500, 75, 7));
    }
}

void BM_GradientsSerial(benchmark::State &state) {
    const auto obs = tfim(4, 1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_gradients_serial(bench_circuit(), obs, 20, 7));
    }
}

void BM_GradientsParallel(benchmark::State &state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    const auto obs = tfim(4, 1.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_gradients(bench_circuit(), obs, 20, 7));
    }
}

} // namespace

BENCHMARK(BM_FidelityHistogramSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FidelityHistogramParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientsParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
