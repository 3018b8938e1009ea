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

#ifndef POLSAR_EIGEN_H_A_ALPHA_HPP_
#define POLSAR_EIGEN_H_A_ALPHA_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "polsar/decomp/fields.hpp"
#include "polsar/eigen/hermitian3.hpp"

namespace polsar {

// Pixels with sum(lambda) at or below this are zero-power: H = A = alpha = 0,
// p = 0 and the pixel is flagged invalid.
inline constexpr double kZeroPowerThreshold = 1e-30;

struct PixelHAAlpha {
  std::array<double, 3> p{};        // pseudo-probabilities lambda_i / sum
  std::array<double, 3> alpha_i{};  // arccos |e_i[0]|, degrees
  double entropy = 0.0;             // log base 3, in [0, 1]
  double anisotropy = 0.0;          // (l2 - l3) / (l2 + l3), 0/0 := 0
  double alpha = 0.0;               // sum p_i alpha_i, degrees
  bool valid = false;
};

PixelHAAlpha HAAlpha(const EigenDecomposition& eig);

struct EigenFeatures {
  int width = 0;
  int height = 0;
  std::vector<std::array<double, 3>> lambda;
  std::vector<std::array<Vector3c, 3>> evec;
  std::vector<std::array<double, 3>> p;
  std::vector<std::array<double, 3>> alpha_i;
  std::vector<double> entropy;
  std::vector<double> anisotropy;
  std::vector<double> alpha;  // degrees
  std::vector<std::uint8_t> valid;

  std::size_t PixelCount() const {
    return static_cast<std::size_t>(width) * height;
  }
};

// Assembles EigenFeatures from per-pixel decompositions (row-major).
EigenFeatures HAAlphaField(int width, int height,
                           std::span<const EigenDecomposition> eig);

// Per-pixel EigenHermitian3 followed by HAAlphaField.
EigenFeatures DecomposeField(const CoherencyField& coherency);

}  // namespace polsar

#endif  // POLSAR_EIGEN_H_A_ALPHA_HPP_
