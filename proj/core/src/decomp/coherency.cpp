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
#include <array>

#include "polsar/common/error.hpp"
#include "polsar/common/parallel.hpp"
#include "polsar/decomp/pauli.hpp"

namespace polsar {
namespace {

// Upper-triangle slots of a 3x3 matrix: (0,0) (0,1) (0,2) (1,1) (1,2) (2,2).
constexpr std::array<std::pair<int, int>, 6> kUpper = {
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

using Upper = std::array<cdouble, 6>;

}  // namespace

CoherencyField Coherency(const PauliField& pauli, int window) {
  if (window < 1 || window % 2 == 0) {
    throw ValidationError("multilook window must be odd and >= 1, got " +
                          std::to_string(window));
  }
  if (window > std::min(pauli.width, pauli.height)) {
    throw ValidationError("multilook window " + std::to_string(window) +
                          " exceeds image dimensions");
  }
  const int w = pauli.width;
  const int h = pauli.height;
  const int r = window / 2;
  const std::size_t n = pauli.PixelCount();

  std::vector<Upper> outer(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& k = pauli.k[i];
    for (std::size_t s = 0; s < kUpper.size(); ++s) {
      const auto [a, b] = kUpper[s];
      outer[i][s] = k[a] * std::conj(k[b]);
    }
  }

  // Separable boxcar: horizontal sums, then vertical sums, then normalize by
  // the clamped window area.
  std::vector<Upper> row_sum(n);
  ParallelFor(0, static_cast<std::size_t>(h), [&](std::size_t y) {
    for (int x = 0; x < w; ++x) {
      Upper acc{};
      for (int xx = std::max(0, x - r); xx <= std::min(w - 1, x + r); ++xx) {
        const auto& o = outer[y * w + xx];
        for (std::size_t s = 0; s < acc.size(); ++s) acc[s] += o[s];
      }
      row_sum[y * w + x] = acc;
    }
  });

  CoherencyField out;
  out.width = w;
  out.height = h;
  out.looks = window;
  out.t.resize(n);
  ParallelFor(0, static_cast<std::size_t>(h), [&](std::size_t y) {
    const int y0 = std::max(0, static_cast<int>(y) - r);
    const int y1 = std::min(h - 1, static_cast<int>(y) + r);
    for (int x = 0; x < w; ++x) {
      Upper acc{};
      for (int yy = y0; yy <= y1; ++yy) {
        const auto& o = row_sum[static_cast<std::size_t>(yy) * w + x];
        for (std::size_t s = 0; s < acc.size(); ++s) acc[s] += o[s];
      }
      const int cols = std::min(w - 1, x + r) - std::max(0, x - r) + 1;
      const double inv = 1.0 / (static_cast<double>(cols) * (y1 - y0 + 1));
      Matrix3c& t = out.t[y * w + x];
      for (std::size_t s = 0; s < kUpper.size(); ++s) {
        const auto [a, b] = kUpper[s];
        if (a == b) {
          t(a, a) = acc[s].real() * inv;
        } else {
          t(a, b) = acc[s] * inv;
          t(b, a) = std::conj(t(a, b));
        }
      }
    }
  });
  return out;
}

SpanField Span(const CoherencyField& coherency) {
  SpanField out;
  out.width = coherency.width;
  out.height = coherency.height;
  out.span.resize(coherency.PixelCount());
  for (std::size_t i = 0; i < out.span.size(); ++i) {
    out.span[i] = coherency.t[i].Trace();
  }
  return out;
}

}  // namespace polsar
