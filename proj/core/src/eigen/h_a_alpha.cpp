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

#include "polsar/eigen/h_a_alpha.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "polsar/common/error.hpp"
#include "polsar/common/parallel.hpp"

namespace polsar {

PixelHAAlpha HAAlpha(const EigenDecomposition& eig) {
  PixelHAAlpha out;
  std::array<double, 3> lambda{};
  for (int i = 0; i < 3; ++i) lambda[i] = std::max(0.0, eig.values[i]);
  const double total = lambda[0] + lambda[1] + lambda[2];
  if (!(total > kZeroPowerThreshold)) return out;

  out.valid = true;
  const double inv_log3 = 1.0 / std::log(3.0);
  for (int i = 0; i < 3; ++i) {
    out.p[i] = lambda[i] / total;
    if (out.p[i] > 0.0) out.entropy -= out.p[i] * std::log(out.p[i]) * inv_log3;
    const double c = std::min(1.0, std::abs(eig.vectors[i][0]));
    out.alpha_i[i] = std::acos(c) * 180.0 / std::numbers::pi;
    out.alpha += out.p[i] * out.alpha_i[i];
  }
  out.entropy = std::clamp(out.entropy, 0.0, 1.0);
  out.alpha = std::clamp(out.alpha, 0.0, 90.0);
  const double minor = lambda[1] + lambda[2];
  out.anisotropy =
      minor > 0.0 ? std::clamp((lambda[1] - lambda[2]) / minor, 0.0, 1.0) : 0.0;
  return out;
}

EigenFeatures HAAlphaField(int width, int height,
                           std::span<const EigenDecomposition> eig) {
  EigenFeatures f;
  f.width = width;
  f.height = height;
  const std::size_t n = f.PixelCount();
  if (eig.size() != n) {
    throw ValidationError("eigen output count does not match dimensions");
  }
  f.lambda.resize(n);
  f.evec.resize(n);
  f.p.resize(n);
  f.alpha_i.resize(n);
  f.entropy.resize(n);
  f.anisotropy.resize(n);
  f.alpha.resize(n);
  f.valid.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PixelHAAlpha px = HAAlpha(eig[i]);
    f.lambda[i] = eig[i].values;
    f.evec[i] = eig[i].vectors;
    f.p[i] = px.p;
    f.alpha_i[i] = px.alpha_i;
    f.entropy[i] = px.entropy;
    f.anisotropy[i] = px.anisotropy;
    f.alpha[i] = px.alpha;
    f.valid[i] = px.valid ? 1 : 0;
  }
  return f;
}

EigenFeatures DecomposeField(const CoherencyField& coherency) {
  std::vector<EigenDecomposition> eig(coherency.PixelCount());
  const auto w = static_cast<std::size_t>(coherency.width);
  ParallelFor(0, static_cast<std::size_t>(coherency.height),
              [&](std::size_t y) {
                for (std::size_t i = y * w; i < (y + 1) * w; ++i) {
                  eig[i] = EigenHermitian3(coherency.t[i]);
                }
              });
  return HAAlphaField(coherency.width, coherency.height, eig);
}

}  // namespace polsar
