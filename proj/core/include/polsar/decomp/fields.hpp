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

#ifndef POLSAR_DECOMP_FIELDS_HPP_
#define POLSAR_DECOMP_FIELDS_HPP_

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "polsar/common/matrix3.hpp"

namespace polsar {

// Per-pixel scattering amplitudes of a single-look-complex scene. Reciprocity
// is assumed, so only S_HV is stored (S_VH = S_HV). Amplitudes are kept in
// float32, the precision of the on-disk container.
struct ScatteringField {
  int width = 0;
  int height = 0;
  std::vector<std::complex<float>> s_hh;
  std::vector<std::complex<float>> s_hv;
  std::vector<std::complex<float>> s_vv;
  std::map<std::string, std::string> metadata;

  static ScatteringField Zeros(int width, int height);
  std::size_t PixelCount() const {
    return static_cast<std::size_t>(width) * height;
  }
  // Throws ValidationError when a channel buffer has the wrong length.
  void Validate() const;

  bool operator==(const ScatteringField&) const = default;
};

// Pauli scattering vector k_P = (1/sqrt2)[HH+VV, HH-VV, 2HV] per pixel.
struct PauliField {
  int width = 0;
  int height = 0;
  std::vector<Vector3c> k;

  std::size_t PixelCount() const {
    return static_cast<std::size_t>(width) * height;
  }
};

// Multilooked coherency matrices T = <k_P k_P^H>.
struct CoherencyField {
  int width = 0;
  int height = 0;
  int looks = 1;  // boxcar window edge length
  std::vector<Matrix3c> t;

  std::size_t PixelCount() const {
    return static_cast<std::size_t>(width) * height;
  }
  const Matrix3c& at(int x, int y) const {
    return t[static_cast<std::size_t>(y) * width + x];
  }
};

// Total power (trace of T) per pixel.
struct SpanField {
  int width = 0;
  int height = 0;
  std::vector<double> span;
};

}  // namespace polsar

#endif  // POLSAR_DECOMP_FIELDS_HPP_
