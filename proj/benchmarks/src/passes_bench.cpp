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

#include "qftdyn/dd.hpp"
#include "qftdyn/qft.hpp"
#include "qftdyn/rewriter.hpp"
#include "qftdyn/text_format.hpp"

namespace {

using namespace qftdyn;

void BM_insert_dd(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const TimingModel timing;
    Circuit c = build_dynamic_qft(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(insert_dd(c, timing, DdSequence::fc_dd()));
    }
}
BENCHMARK(BM_insert_dd)->RangeMultiplier(2)->Range(4, 32);

void BM_defer_measurement_rewrite(benchmark::State &state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    Circuit c = build_unitary_qft(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(defer_measurement_rewrite(c));
    }
}
BENCHMARK(BM_defer_measurement_rewrite)->RangeMultiplier(2)->Range(4, 32);

void BM_text_round_trip(benchmark::State &state) {
    Circuit c = insert_dd(build_unitary_qft(static_cast<std::uint32_t>(state.range(0))), TimingModel{},
                          DdSequence::ur(10));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_text(print_text(c)));
    }
}
BENCHMARK(BM_text_round_trip)->RangeMultiplier(2)->Range(4, 32);

}  // namespace
