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

#include "polsar/fusion/visualize.hpp"

#include <algorithm>
#include <cmath>

#include "polsar/common/error.hpp"

namespace polsar {

PromptMaps VisualizePrompts(const PromptPair& prompts) {
  const Matrix& dense = prompts.dense;
  const Matrix& sparse = prompts.sparse;
  if (dense.rows != prompts.height * prompts.width || dense.cols == 0 ||
      sparse.cols != dense.cols) {
    throw ValidationError("prompt pair shapes are inconsistent");
  }
  const int c = dense.cols;
  PromptMaps maps;
  maps.v_d = Matrix(prompts.height, prompts.width);
  for (int p = 0; p < dense.rows; ++p) {
    double s = 0.0;
    for (int k = 0; k < c; ++k) s += dense.at(p, k);
    maps.v_d.data[p] = s / c;
  }
  for (int i = 0; i < sparse.rows; ++i) {
    Matrix v(prompts.height, prompts.width);
    for (int p = 0; p < dense.rows; ++p) {
      double s = 0.0;
      for (int k = 0; k < c; ++k) s += sparse.at(i, k) * dense.at(p, k);
      v.data[p] = s / c;
    }
    maps.v_sd.push_back(std::move(v));
  }
  return maps;
}

Matrix NormalizeMinMax(const Matrix& m) {
  Matrix out(m.rows, m.cols);
  if (m.size() == 0) return out;
  const auto [lo, hi] = std::minmax_element(m.data.begin(), m.data.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < m.size(); ++i) out.data[i] = (m.data[i] - *lo) / range;
  return out;
}

Image8 RenderMap(const Matrix& m) {
  const Matrix n = NormalizeMinMax(m);
  Image8 image;
  image.width = m.cols;
  image.height = m.rows;
  image.channels = 1;
  image.pixels.resize(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    image.pixels[i] = static_cast<std::uint8_t>(std::lround(255.0 * n.data[i]));
  }
  return image;
}

}  // namespace polsar
