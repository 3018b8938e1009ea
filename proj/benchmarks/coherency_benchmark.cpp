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

#include "polsar/decomp/pauli.hpp"
#include "polsar/decomp/synthetic.hpp"
#include "polsar/eigen/h_a_alpha.hpp"

namespace polsar {
namespace {

PauliField Scene(int edge) {
  SynthConfig cfg;
  cfg.width = edge;
  cfg.height = edge;
  return PauliVector(GenerateScene(cfg).field);
}

void BM_Coherency(benchmark::State& state) {
  const int edge = static_cast<int>(state.range(0));
  const int window = static_cast<int>(state.range(1));
  const PauliField pauli = Scene(edge);
  for (auto _ : state) benchmark::DoNotOptimize(Coherency(pauli, window));
  state.SetItemsProcessed(state.iterations() * edge * edge);
}
BENCHMARK(BM_Coherency)->Args({256, 3})->Args({256, 7})->Args({512, 3});

void BM_DecomposeField(benchmark::State& state) {
  const int edge = static_cast<int>(state.range(0));
  const CoherencyField c = Coherency(Scene(edge), 3);
  for (auto _ : state) benchmark::DoNotOptimize(DecomposeField(c));
  state.SetItemsProcessed(state.iterations() * edge * edge);
}
BENCHMARK(BM_DecomposeField)->Arg(256)->Arg(512);

}  // namespace
}  // namespace polsar
