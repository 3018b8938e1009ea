/* Copyright 2026 The polsar Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <random>

#include <benchmark/benchmark.h>

#include "polsar/fusion/kernel.hpp"
#include "polsar/fusion/weights.hpp"

namespace polsar {
namespace {

Tensor3 Random(std::uint64_t seed, int c, int h, int w) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Tensor3 t(c, h, w);
  for (double& v : t.data) v = u(rng);
  return t;
}

KernelConfig Config(int channels, int grid) {
  KernelConfig c;
  c.channels = channels;
  c.height = grid;
  c.width = grid;
  c.sparse_prompts = 6;
  c.mvd_classes = 13;
  return c;
}

void BM_Sfp(benchmark::State& state) {
  const int channels = static_cast<int>(state.range(0));
  const int grid = static_cast<int>(state.range(1));
  const KernelWeights w = KernelWeights::Init(Config(channels, grid), 1);
  const Tensor3 a = Random(1, channels, grid, grid), b = Random(2, channels, grid, grid),
                c = Random(3, channels, grid, grid);
  for (auto _ : state) benchmark::DoNotOptimize(Sfp(a, b, c, w));
}
BENCHMARK(BM_Sfp)->Args({16, 8})->Args({32, 16})->Unit(benchmark::kMicrosecond);

void BM_RunFusion(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  const KernelWeights w = KernelWeights::Init(Config(16, grid), 1);
  const Tensor3 i1 = Random(1, 3, 4 * grid, 4 * grid), i2 = Random(2, 3, 4 * grid, 4 * grid);
  Tensor3 onehot(13, 4 * grid, 4 * grid);
  for (int y = 0; y < 4 * grid; ++y) {
    for (int x = 0; x < 4 * grid; ++x) onehot.at((x + y) % 13, y, x) = 1;
  }
  for (auto _ : state) benchmark::DoNotOptimize(RunFusion(i1, i2, onehot, w));
}
BENCHMARK(BM_RunFusion)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace polsar
