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

#include <benchmark/benchmark.h>

#include "polsar/cluster/wishart.hpp"
#include "polsar/cluster/zones.hpp"
#include "polsar/decomp/pauli.hpp"
#include "polsar/decomp/synthetic.hpp"
#include "polsar/eigen/h_a_alpha.hpp"

namespace polsar {
namespace {

void BM_WishartIterate(benchmark::State& state) {
  SynthConfig cfg;
  cfg.width = static_cast<int>(state.range(0));
  cfg.height = cfg.width;
  cfg.snr_db = 5.0;
  const CoherencyField c = Coherency(PauliVector(GenerateScene(cfg).field), 3);
  const LabelRaster init = InitClusters(DecomposeField(c), 8);
  int iterations = 0;
  for (auto _ : state) {
    const WishartResult r = WishartIterate(c, init);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.labels.label.data());
  }
  state.counters["iterations"] = iterations;
}
BENCHMARK(BM_WishartIterate)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_WishartDistance(benchmark::State& state) {
  const Matrix3c v = Matrix3c::Diagonal(2, 1, 0.5);
  const WishartCenter center(v, 1e-6);
  const Matrix3c t = Matrix3c::Diagonal(1, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(center.Distance(t));
}
BENCHMARK(BM_WishartDistance);

}  // namespace
}  // namespace polsar
