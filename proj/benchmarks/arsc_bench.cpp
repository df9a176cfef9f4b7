// Copyright 2026 The ARSC Simulator Authors
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

#include <random>

#include "arsc/dct_pipeline.hpp"
#include "arsc/sc_core.hpp"

namespace {

using namespace arsc;

void BM_CbscMultiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::uint32_t len = 1u << n;
  std::uint32_t x = 0, w = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cbsc_multiply(UnsignedFixed(n, x), w));
    x = (x + 37) & (len - 1);
    w = (w + 91) % (len + 1);
  }
}
BENCHMARK(BM_CbscMultiply)->DenseRange(6, 10, 2);

void BM_LfsrMultiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto xc = LfsrConfig::maximal(n, 1), wc = LfsrConfig::maximal(n, 5);
  const UnsignedFixed x(n, (1u << n) / 3), w(n, (1u << n) / 5);
  for (auto _ : state) benchmark::DoNotOptimize(lfsr_multiply(x, w, xc, wc));
}
BENCHMARK(BM_LfsrMultiply)->DenseRange(6, 10, 2);

void BM_Mac8(benchmark::State& state) {
  const auto sel = AccuracySelect::from_bitwidth(static_cast<int>(state.range(0)));
  std::mt19937 rng(1);
  std::vector<SignMagnitude> xs;
  std::vector<double> cs;
  for (int i = 0; i < 8; ++i) {
    xs.emplace_back(rng() & 1u, UnsignedFixed(10, rng() % 1024));
    cs.push_back(dct_basis(3, i));
  }
  for (auto _ : state) benchmark::DoNotOptimize(mac(xs, cs, sel, MacScaling{2}));
}
BENCHMARK(BM_Mac8)->DenseRange(6, 10, 1);

void BM_Dct2d(benchmark::State& state) {
  const auto sel = AccuracySelect::from_bitwidth(static_cast<int>(state.range(0)));
  std::mt19937 rng(2);
  FixedBlock b;
  for (auto& r : b)
    for (auto& v : r) v = normalize_pixel(static_cast<std::uint8_t>(rng()), 10);
  for (auto _ : state) benchmark::DoNotOptimize(dct2d(b, sel));
}
BENCHMARK(BM_Dct2d)->DenseRange(6, 10, 2);

void BM_ProcessImage(benchmark::State& state) {
  const auto img = make_reference_image(256);
  PipelineOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(process_image(img, AccuracySelect(0), FrequencyMask::low_pass(4), opt));
  }
}
BENCHMARK(BM_ProcessImage)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
