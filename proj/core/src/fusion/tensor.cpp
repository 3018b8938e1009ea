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

#include "polsar/fusion/tensor.hpp"

#include <cmath>

#include "polsar/common/error.hpp"

namespace polsar {

bool Matrix::AllFinite() const {
  for (double v : data) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Matrix Transposed(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
  }
  return t;
}

Matrix MatMul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) {
    throw ValidationError("matmul shape mismatch: " + std::to_string(a.rows) +
                          "x" + std::to_string(a.cols) + " * " +
                          std::to_string(b.rows) + "x" +
                          std::to_string(b.cols));
  }
  Matrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    double* row = &out.data[static_cast<std::size_t>(i) * b.cols];
    for (int k = 0; k < a.cols; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      const double* brow = &b.data[static_cast<std::size_t>(k) * b.cols];
      for (int j = 0; j < b.cols; ++j) row[j] += aik * brow[j];
    }
  }
  return out;
}

Matrix FlattenSpatial(const Tensor3& t) {
  Matrix m(t.channels, t.height * t.width);
  m.data = t.data;
  return m;
}

Tensor3 UnflattenSpatial(const Matrix& m, int height, int width) {
  if (m.cols != height * width) {
    throw ValidationError("cannot reshape " + std::to_string(m.cols) +
                          " positions to " + std::to_string(height) + "x" +
                          std::to_string(width));
  }
  Tensor3 t(m.rows, height, width);
  t.data = m.data;
  return t;
}

Tensor3 ImageToTensor(const Image8& image) {
  if (image.channels != 3) throw ValidationError("expected an RGB image");
  Tensor3 t(3, image.height, image.width);
  const std::size_t plane = t.plane();
  for (std::size_t i = 0; i < plane; ++i) {
    for (int c = 0; c < 3; ++c) {
      t.data[c * plane + i] = image.pixels[3 * i + c] / 255.0;
    }
  }
  return t;
}

}  // namespace polsar
