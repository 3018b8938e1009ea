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

#ifndef POLSAR_EIGEN_HERMITIAN3_HPP_
#define POLSAR_EIGEN_HERMITIAN3_HPP_

#include <array>

#include "polsar/common/matrix3.hpp"

namespace polsar {

struct EigenDecomposition {
  std::array<double, 3> values{};     // descending
  std::array<Vector3c, 3> vectors{};  // unit norm, mutually orthogonal
};

// Closed-form eigendecomposition of a 3x3 Hermitian matrix.
//
// The eigenvalues come from the trigonometric solution of the characteristic
// cubic. The eigenvector of the best-separated eigenvalue is taken from the
// largest cross product of two rows of (T - lambda I) and its eigenvalue is
// polished by the Rayleigh quotient; the remaining pair is solved in closed
// form on the 2-D orthogonal complement.
//
// Eigenvalues closer than 1e-12 * sum|lambda| are treated as degenerate: their
// eigenvectors are the canonical basis vectors e1, e2, e3 taken in order,
// Gram-Schmidt projected against the eigenvectors already fixed. Every vector
// is phase-normalized so that its largest component is real and positive.
//
// Throws ValidationError when |T_ij - conj(T_ji)| exceeds 1e-9 * trace.
EigenDecomposition EigenHermitian3(const Matrix3c& t);

}  // namespace polsar

#endif  // POLSAR_EIGEN_HERMITIAN3_HPP_
