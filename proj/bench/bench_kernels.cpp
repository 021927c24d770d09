// Copyright 2026 The nsbasis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <vector>

#include "nsbasis/device.h"
#include "nsbasis/feasibility.h"
#include "nsbasis/rng.h"
#include "nsbasis/selector.h"
#include "nsbasis/synth.h"
#include "nsbasis/weyl.h"

using namespace nsbasis;

namespace {

std::vector<Mat4> random_unitaries(int n) {
    CounterRng rng(1, 0);
    std::vector<Mat4> us;
    for (int k = 0; k < n; k++) {
        us.push_back(random_unitary4(rng));
    }
    return us;
}

SynthesisOptions restart_options() {
    SynthesisOptions o;
    o.seed = 3;
    o.restarts = 16;
    o.stop_at_success = false;
    return o;
}

const std::vector<CriterionSpec> &selection_criteria() {
    static const std::vector<CriterionSpec> c{criterion_by_name("criterion1"), criterion_by_name("criterion2")};
    return c;
}

DriveSettings short_drive() {
    DriveSettings s;
    s.t_max_nonstandard = 20e-9;
    return s;
}

void BM_RegionVolume(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(region_volume(swap3_region(), state.range(0), 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RegionVolumeSerial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(region_volume_serial(swap3_region(), state.range(0), 7));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchKak(benchmark::State &state) {
    const std::vector<Mat4> us = random_unitaries((int)state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch_coordinates(us));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchKakSerial(benchmark::State &state) {
    const std::vector<Mat4> us = random_unitaries((int)state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(batch_coordinates_serial(us));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SynthesisRestarts(benchmark::State &state) {
    const std::vector<Mat4> layers(3, gates::sqrt_iswap());
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize_best(gates::swap(), layers, restart_options()));
    }
}

void BM_SynthesisRestartsSerial(benchmark::State &state) {
    const std::vector<Mat4> layers(3, gates::sqrt_iswap());
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize_best_serial(gates::swap(), layers, restart_options()));
    }
}

void BM_EdgeSimulation(benchmark::State &state) {
    const DeviceModel d = generate_device(1, 3, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_device(d, selection_criteria(), short_drive()));
    }
}

void BM_EdgeSimulationSerial(benchmark::State &state) {
    const DeviceModel d = generate_device(1, 3, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_device_serial(d, selection_criteria(), short_drive()));
    }
}

}  // namespace

BENCHMARK(BM_RegionVolume)->Arg(1 << 18)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RegionVolumeSerial)->Arg(1 << 18)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchKak)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatchKakSerial)->Arg(4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SynthesisRestarts)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SynthesisRestartsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EdgeSimulation)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(2);
BENCHMARK(BM_EdgeSimulationSerial)->Unit(benchmark::kMillisecond)->UseRealTime()->Iterations(2);

BENCHMARK_MAIN();
