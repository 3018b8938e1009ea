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
#include <vector>

#include <benchmark/benchmark.h>

#include "polsar/eigen/h_a_alpha.hpp"
#include "polsar/eigen/hermitian3.hpp"

namespace polsar {
namespace {

std::vector<Matrix3c> Matrices(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<Matrix3c> out(n);
  for (auto& t : out) {
    Matrix3c a;
    for (auto& z : a.a) z = {g(rng), g(rng)};
    t = a * a.Adjoint();
  }
  return out;
}

void BM_EigenHermitian3(benchmark::State& state) {
  const auto mats = Matrices(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EigenHermitian3(mats[i++ & 1023]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EigenHermitian3);

void BM_HAAlpha(benchmark::State& state) {
  const auto mats = Matrices(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(HAAlpha(EigenHermitian3(mats[i++ & 1023])));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HAAlpha);

}  // namespace
}  // namespace polsar
