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

#include "polsar/eigen/hermitian3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "polsar/common/error.hpp"

namespace polsar {
namespace {

constexpr double kHermitianTolerance = 1e-9;
constexpr double kDegenerateTolerance = 1e-12;
// Residual norm below which a projected canonical vector is rejected.
constexpr double kCanonicalReject = 1e-6;

Vector3c Scaled(const Vector3c& v, cdouble s) {
  return Vector3c{{v[0] * s, v[1] * s, v[2] * s}};
}

Vector3c Normalized(const Vector3c& v) { return Scaled(v, 1.0 / v.Norm()); }

void Axpy(cdouble a, const Vector3c& x, Vector3c* y) {
  for (int i = 0; i < 3; ++i) (*y)[i] += a * x[i];
}

Vector3c Canonical(int i) {
  Vector3c e;
  e[i] = 1.0;
  return e;
}

// Rotates |v| so its largest-magnitude component (first one on near ties) is
// real and positive.
Vector3c PhaseNormalized(const Vector3c& v) {
  double best = 0.0;
  for (int i = 0; i < 3; ++i) best = std::max(best, std::abs(v[i]));
  for (int i = 0; i < 3; ++i) {
    const double mag = std::abs(v[i]);
    if (mag >= best * (1.0 - 1e-9)) {
      return Scaled(v, std::conj(v[i]) / mag);
    }
  }
  return v;
}

// Canonical basis vectors, in order, orthogonalized against |fixed| and each
// other; returns the first |count| that survive.
std::vector<Vector3c> CanonicalComplement(const std::vector<Vector3c>& fixed,
                                          int count) {
  std::vector<Vector3c> basis = fixed;
  std::vector<Vector3c> picked;
  for (int i = 0; i < 3 && static_cast<int>(picked.size()) < count; ++i) {
    Vector3c v = Canonical(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) Axpy(-Dot(b, v), b, &v);
    }
    if (v.Norm() <= kCanonicalReject) continue;
    v = Normalized(v);
    basis.push_back(v);
    picked.push_back(v);
  }
  return picked;
}

double RayleighQuotient(const Matrix3c& h, const Vector3c& v) {
  return Dot(v, h * v).real();
}

// Trigonometric roots of the characteristic cubic, descending.
std::array<double, 3> CubicRoots(const Matrix3c& h) {
  const double m = h.Trace() / 3.0;
  Matrix3c b = h - Matrix3c::Identity() * m;
  double p2 = 0.0;
  for (const auto& x : b.a) p2 += std::norm(x);
  const double p = std::sqrt(p2 / 6.0);
  if (p == 0.0) return {m, m, m};
  b *= 1.0 / p;
  const double r = std::clamp(b.Determinant().real() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double l1 = m + 2.0 * p * std::cos(phi);
  const double l3 = m + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double l2 = 3.0 * m - l1 - l3;
  std::array<double, 3> roots = {l1, l2, l3};
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

// Null vector of (h - lambda I) from the largest cross product of two rows.
Vector3c NullVectorFromRows(const Matrix3c& h, double lambda) {
  const Matrix3c m = h - Matrix3c::Identity() * lambda;
  const Vector3c r0 = m.Row(0), r1 = m.Row(1), r2 = m.Row(2);
  const Vector3c candidates[3] = {Cross(r0, r1), Cross(r0, r2), Cross(r1, r2)};
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (candidates[i].SquaredNorm() > candidates[best].SquaredNorm()) best = i;
  }
  return candidates[best];
}

}  // namespace

EigenDecomposition EigenHermitian3(const Matrix3c& t) {
  const double scale_in = std::max(std::abs(t.Trace()), t.FrobeniusNorm());
  if (HermitianDefect(t) > kHermitianTolerance * scale_in) {
    throw ValidationError("matrix is not Hermitian within tolerance");
  }
  Matrix3c h = (t + t.Adjoint()) * 0.5;
  for (int i = 0; i < 3; ++i) h(i, i) = h(i, i).real();

  EigenDecomposition out;
  const auto roots = CubicRoots(h);
  const double scale =
      std::abs(roots[0]) + std::abs(roots[1]) + std::abs(roots[2]);
  const double tol = kDegenerateTolerance * scale;

  if (roots[0] - roots[2] <= tol) {
    out.values = roots;
    for (int i = 0; i < 3; ++i) out.vectors[i] = Canonical(i);
    return out;
  }

  // Fix the eigenvector of the best-separated extreme eigenvalue first.
  const bool top_isolated = roots[0] - roots[1] >= roots[1] - roots[2];
  const double lambda_iso = top_isolated ? roots[0] : roots[2];
  Vector3c v_iso = NullVectorFromRows(h, lambda_iso);
  if (v_iso.Norm() == 0.0) {
    throw NumericError("eigenvector extraction failed");
  }
  v_iso = Normalized(v_iso);
  const double iso_value = RayleighQuotient(h, v_iso);

  // Remaining pair on the orthogonal complement span{u, w}.
  const auto complement = CanonicalComplement({v_iso}, 2);
  const Vector3c& u = complement[0];
  const Vector3c& w = complement[1];
  const Vector3c hu = h * u;
  const Vector3c hw = h * w;
  const double a = Dot(u, hu).real();
  const double d = Dot(w, hw).real();
  const cdouble b = Dot(u, hw);
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double disc = std::hypot(half, std::abs(b));
  const double mu_hi = mean + disc;
  const double mu_lo = mean - disc;

  Vector3c v_hi, v_lo;
  if (mu_hi - mu_lo <= tol) {
    v_hi = u;
    v_lo = w;
  } else {
    // [a b; conj(b) d] (x, y) = mu (x, y).
    cdouble x = b;
    cdouble y = mu_hi - a;
    const cdouble x2 = mu_hi - d;
    const cdouble y2 = std::conj(b);
    if (std::norm(x2) + std::norm(y2) > std::norm(x) + std::norm(y)) {
      x = x2;
      y = y2;
    }
    const double len = std::sqrt(std::norm(x) + std::norm(y));
    x /= len;
    y /= len;
    v_hi = Scaled(u, x);
    Axpy(y, w, &v_hi);
    v_lo = Scaled(u, -std::conj(y));
    Axpy(std::conj(x), w, &v_lo);
  }

  struct Pair {
    double value;
    Vector3c vector;
  };
  std::array<Pair, 3> pairs = {Pair{iso_value, v_iso}, Pair{mu_hi, v_hi},
                               Pair{mu_lo, v_lo}};
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& l, const Pair& r) { return l.value > r.value; });
  for (int i = 0; i < 3; ++i) {
    out.values[i] = pairs[i].value;
    out.vectors[i] = PhaseNormalized(pairs[i].vector);
  }
  return out;
}

}  // namespace polsar
