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

#include <algorithm>
#include <cmath>

#include "polsar/common/error.hpp"
#include "polsar/decomp/pauli.hpp"

namespace polsar {
namespace {

constexpr double kDbFloor = 1e-10;

}  // namespace

double Percentile(const std::vector<double>& sorted, double p) {
  const double pos = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Image8 PauliRgb(const PauliField& pauli, const PauliRgbOptions& options) {
  if (!(options.clip_lo >= 0.0 && options.clip_lo < options.clip_hi &&
        options.clip_hi <= 100.0)) {
    throw ValidationError("Pauli RGB percentiles must satisfy 0 <= lo < hi <= 100");
  }
  const std::size_t n = pauli.PixelCount();
  Image8 image;
  image.width = pauli.width;
  image.height = pauli.height;
  image.channels = 3;
  image.pixels.assign(n * 3, 0);
  if (n == 0) return image;

  // Output channel c takes Pauli component kSource[c].
  constexpr int kSource[3] = {1, 2, 0};
  std::vector<std::uint8_t> has_power(n);
  for (std::size_t i = 0; i < n; ++i) has_power[i] = pauli.k[i].SquaredNorm() > 0.0;
  std::vector<double> db(n);
  std::vector<double> sorted;
  for (int c = 0; c < 3; ++c) {
    sorted.clear();
    for (std::size_t i = 0; i < n; ++i) {
      db[i] = 20.0 * std::log10(std::abs(pauli.k[i][kSource[c]]) + kDbFloor);
      if (has_power[i]) sorted.push_back(db[i]);
    }
    if (sorted.empty()) break;  // all-zero scene renders black
    std::sort(sorted.begin(), sorted.end());
    const double lo = Percentile(sorted, options.clip_lo);
    const double hi = Percentile(sorted, options.clip_hi);
    if (!(hi > lo)) continue;  // flat channel quantizes to 0
    const double scale = 255.0 / (hi - lo);
    for (std::size_t i = 0; i < n; ++i) {
      if (!has_power[i]) continue;
      const double v = std::clamp((db[i] - lo) * scale, 0.0, 255.0);
      image.pixels[3 * i + c] = static_cast<std::uint8_t>(std::lround(v));
    }
  }
  return image;
}

}  // namespace polsar
