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

#include "riverdtn/compression.hpp"
#include "riverdtn/payload.hpp"

namespace {

using namespace riverdtn;

// Arg 0: content class index, arg 1: payload KiB.
std::vector<std::uint8_t> payload_for(const benchmark::State& state) {
  const auto cls = static_cast<ContentClass>(state.range(0));
  return sim::synthesize_payload(cls, static_cast<std::size_t>(state.range(1)) * 1024, 42);
}

void BM_Deflate(benchmark::State& state) {
  const auto payload = payload_for(state);
  std::size_t out = 0;
  for (auto _ : state) {
    out = compression::deflate_raw(payload, compression::kDefaultLevel).size();
    benchmark::DoNotOptimize(out);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * payload.size()));
  state.counters["ratio"] = 1.0 - static_cast<double>(out) / static_cast<double>(payload.size());
}
BENCHMARK(BM_Deflate)->Args({0, 100})->Args({1, 3000})->Args({2, 5000})->Unit(benchmark::kMillisecond);

void BM_Inflate(benchmark::State& state) {
  const auto packed = compression::deflate_raw(payload_for(state), compression::kDefaultLevel);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compression::inflate_raw(packed));
  }
}
BENCHMARK(BM_Inflate)->Args({0, 100})->Args({1, 3000})->Args({2, 5000})->Unit(benchmark::kMillisecond);

void BM_Calibrate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::synthesize_payload(0.50, 100 * 1024, state.iterations()));
  }
}
BENCHMARK(BM_Calibrate)->Unit(benchmark::kMillisecond);

}  // namespace
