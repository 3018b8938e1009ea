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

#ifndef POLSAR_FUSION_TENSOR_HPP_
#define POLSAR_FUSION_TENSOR_HPP_

#include <cstddef>
#include <vector>

#include "polsar/common/png_io.hpp"
#include "polsar/common/tensor3.hpp"

namespace polsar {

// Dense row-major real matrix. Feature maps are held as [C x HW] (the
// channel-major Tensor3 layout) and token sequences as [HW x C].
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  std::size_t size() const { return data.size(); }
  double& at(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  bool SameShape(const Matrix& o) const {
    return rows == o.rows && cols == o.cols;
  }
  bool AllFinite() const;
  bool operator==(const Matrix&) const = default;
};

Matrix Transposed(const Matrix& m);
Matrix MatMul(const Matrix& a, const Matrix& b);

// [C x HW] view of a C x H x W tensor and back.
Matrix FlattenSpatial(const Tensor3& t);
Tensor3 UnflattenSpatial(const Matrix& m, int height, int width);

// 3 x H x W tensor with values in [0, 1].
Tensor3 ImageToTensor(const Image8& image);

}  // namespace polsar

#endif  // POLSAR_FUSION_TENSOR_HPP_
