// Copyright 2026 The riverdtn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "riverdtn/scenario.hpp"
#include "riverdtn/simulator.hpp"

namespace {

using namespace riverdtn;

void BM_TestbedHour(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::run_testbed_preset(1, state.range(0) != 0));
  }
}
BENCHMARK(BM_TestbedHour)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Simulated riverside day; reports wall time per simulated tick.
void BM_RiversideDay(benchmark::State& state) {
  auto c = sim::ScenarioConfig::riverside_defaults();
  c.duration_s = sim::kDay;
  c.nodes.travelers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::run(c));
  }
  state.counters["ticks"] = benchmark::Counter(c.duration_s / c.tick_s * state.iterations(),
                                               benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RiversideDay)->Arg(70)->Arg(150)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
