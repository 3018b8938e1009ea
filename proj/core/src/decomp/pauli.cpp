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

#include "polsar/decomp/pauli.hpp"

#include <cmath>
#include <numbers>

#include "polsar/common/parallel.hpp"

namespace polsar {

PauliField PauliVector(const ScatteringField& field) {
  field.Validate();
  PauliField out;
  out.width = field.width;
  out.height = field.height;
  out.k.resize(field.PixelCount());
  constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
  ParallelFor(0, static_cast<std::size_t>(field.height), [&](std::size_t y) {
    for (std::size_t i = y * field.width; i < (y + 1) * field.width; ++i) {
      const cdouble hh(field.s_hh[i].real(), field.s_hh[i].imag());
      const cdouble hv(field.s_hv[i].real(), field.s_hv[i].imag());
      const cdouble vv(field.s_vv[i].real(), field.s_vv[i].imag());
      out.k[i][0] = kInvSqrt2 * (hh + vv);
      out.k[i][1] = kInvSqrt2 * (hh - vv);
      out.k[i][2] = kInvSqrt2 * 2.0 * hv;
    }
  });
  return out;
}

}  // namespace polsar
