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

#ifndef POLSAR_TESTS_SUPPORT_EIGEN_ORACLE_HPP_
#define POLSAR_TESTS_SUPPORT_EIGEN_ORACLE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "polsar/common/matrix3.hpp"

namespace polsar::testing {

// Roots of det(lambda I - T) by bisection between the critical points of the
// characteristic cubic, in long double.
inline std::array<double, 3> CharacteristicRoots(const Matrix3c& t) {
  using ld = long double;
  auto re = [&](int r, int c) { return static_cast<ld>(t(r, c).real()); };
  auto norm = [&](int r, int c) { return static_cast<ld>(std::norm(t(r, c))); };
  const ld c2 = re(0, 0) + re(1, 1) + re(2, 2);
  const ld c1 = re(0, 0) * re(1, 1) - norm(0, 1) + re(0, 0) * re(2, 2) -
                norm(0, 2) + re(1, 1) * re(2, 2) - norm(1, 2);
  const std::complex<long double> t01(t(0, 1)), t12(t(1, 2)), t20(t(2, 0));
  const ld c0 = re(0, 0) * re(1, 1) * re(2, 2) + 2 * (t01 * t12 * t20).real() -
                re(0, 0) * norm(1, 2) - re(1, 1) * norm(0, 2) -
                re(2, 2) * norm(0, 1);
  auto p = [&](ld x) { return ((x - c2) * x + c1) * x - c0; };
  const ld disc = std::max<ld>(0, c2 * c2 - 3 * c1);
  const ld d_lo = (c2 - std::sqrt(disc)) / 3;
  const ld d_hi = (c2 + std::sqrt(disc)) / 3;
  const ld bound = 1 + std::abs(c2) + std::abs(c1) + std::abs(c0);
  auto bisect = [&](ld a, ld b) {
    ld fa = p(a);
    for (int i = 0; i < 200; ++i) {
      const ld m = 0.5L * (a + b);
      const ld fm = p(m);
      if ((fm <= 0) == (fa <= 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return static_cast<double>(0.5L * (a + b));
  };
  return {bisect(d_hi, bound), bisect(d_lo, d_hi), bisect(-bound, d_lo)};
}

}  // namespace polsar::testing

#endif  // POLSAR_TESTS_SUPPORT_EIGEN_ORACLE_HPP_
