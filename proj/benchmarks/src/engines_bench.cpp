// Copyright 2026 The qftdyn Authors
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

#include "qftdyn/certify.hpp"
#include "qftdyn/dd.hpp"
#include "qftdyn/density_matrix.hpp"
#include "qftdyn/qft.hpp"
#include "qftdyn/simulator.hpp"

namespace {

using namespace qftdyn;

void BM_exact_unitary_qft(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    Circuit c = build_unitary_qft(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_exact(c, 1));
    }
}
BENCHMARK(BM_exact_unitary_qft)->DenseRange(4, 14, 2);

void BM_exact_dynamic_qft(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    Circuit c = build_dynamic_qft(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_exact(c, 1));
    }
}
BENCHMARK(BM_exact_dynamic_qft)->DenseRange(4, 12, 2);

void BM_trajectories(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const auto variant = state.range(1) ? QftVariant::Dynamic : QftVariant::Unitary;
    const auto dd = state.range(1) ? DdSequence::fc_dd() : DdSequence::ur(10);
    const TimingModel timing;
    Circuit c = insert_dd(build_qft(variant, n), timing, dd);
    Circuit prep = build_qft_dagger_state_prep(BasisLabel(1, n));
    const auto noise = NoiseModel::standard();
    const std::uint64_t shots = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trajectories(c, prep, noise, timing, shots, 1, 1));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * shots));
}
BENCHMARK(BM_trajectories)->ArgsProduct({{4, 8, 12}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_density_matrix(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const TimingModel timing;
    Circuit c = insert_dd(build_dynamic_qft(n), timing, DdSequence::fc_dd());
    const auto noise = NoiseModel::standard();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_density_matrix(c, 0, noise, timing));
    }
}
BENCHMARK(BM_density_matrix)->DenseRange(2, 6, 1)->Unit(benchmark::kMillisecond);

void BM_choi_fidelity(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    auto channel = make_qft_channel(QftVariant::Unitary, n, DdSequence::none(), NoiseModel::standard(), TimingModel{});
    auto ideal = ideal_version(channel);
    for (auto _ : state) {
        benchmark::DoNotOptimize(choi_uhlmann_fidelity(ideal, channel));
    }
}
BENCHMARK(BM_choi_fidelity)->DenseRange(1, 3, 1)->Unit(benchmark::kMillisecond);

}  // namespace
