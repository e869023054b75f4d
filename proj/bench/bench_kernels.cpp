// Copyright 2026 The mtjrng Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "mtjrng/conditioning.hpp"
#include "mtjrng/config.hpp"
#include "mtjrng/mtj_array.hpp"
#include "mtjrng/nist/suite.hpp"
#include "mtjrng/prng.hpp"

namespace {

using namespace mtjrng;

const ArrayState& bench_array() {
  static const ArrayState array = [] {
    ArrayConfig cfg = default_array_config();
    return build_array(cfg);
  }();
  return array;
}

void BM_Generate(benchmark::State& state) {
  const CycleConfig cycle;
  for (auto _ : state) benchmark::DoNotOptimize(generate(bench_array(), cycle, 1'600'000));
  state.SetItemsProcessed(state.iterations() * 1'600'000);
}
BENCHMARK(BM_Generate)->Unit(benchmark::kMillisecond);

void BM_GenerateSerial(benchmark::State& state) {
  const CycleConfig cycle;
  for (auto _ : state) benchmark::DoNotOptimize(generate_serial(bench_array(), cycle, 1'600'000));
  state.SetItemsProcessed(state.iterations() * 1'600'000);
}
BENCHMARK(BM_GenerateSerial)->Unit(benchmark::kMillisecond);

const RawBitstream& toeplitz_input() {
  static const RawBitstream in = xoroshiro128p_stream(3, 8192ull * 256);
  return in;
}

const ToeplitzConfig& toeplitz_cfg() {
  static const ToeplitzConfig cfg = ToeplitzConfig::from_stream(8192, 4096, xoroshiro128p_stream(2, 8192 + 4095));
  return cfg;
}

void BM_ToeplitzFft(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_extract(toeplitz_input(), toeplitz_cfg()));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(toeplitz_input().size() / 8));
}
BENCHMARK(BM_ToeplitzFft)->Unit(benchmark::kMillisecond);

void BM_ToeplitzReference(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(toeplitz_extract_reference(toeplitz_input(), toeplitz_cfg()));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(toeplitz_input().size() / 8));
}
BENCHMARK(BM_ToeplitzReference)->Unit(benchmark::kMillisecond);

nist::SuiteConfig bench_suite() {
  nist::SuiteConfig c;
  c.n_sequences = 4;
  return c;
}

const RawBitstream& suite_input() {
  static const RawBitstream in = xoroshiro128p_stream(4, 4'000'000);
  return in;
}

void BM_Suite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nist::run_suite(suite_input(), bench_suite()));
}
BENCHMARK(BM_Suite)->Unit(benchmark::kMillisecond);

void BM_SuiteSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(nist::run_suite_serial(suite_input(), bench_suite()));
}
BENCHMARK(BM_SuiteSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
