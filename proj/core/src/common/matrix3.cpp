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

#include "polsar/common/matrix3.hpp"

#include <algorithm>
#include <cmath>

namespace polsar {

double Vector3c::SquaredNorm() const {
  return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

double Vector3c::Norm() const { return std::sqrt(SquaredNorm()); }

cdouble Dot(const Vector3c& a, const Vector3c& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] +
         std::conj(a[2]) * b[2];
}

Vector3c Cross(const Vector3c& a, const Vector3c& b) {
  Vector3c c;
  c[0] = a[1] * b[2] - a[2] * b[1];
  c[1] = a[2] * b[0] - a[0] * b[2];
  c[2] = a[0] * b[1] - a[1] * b[0];
  return c;
}

Vector3c Conj(const Vector3c& a) {
  Vector3c c;
  for (int i = 0; i < 3; ++i) c[i] = std::conj(a[i]);
  return c;
}

Matrix3c Matrix3c::Identity() { return Diagonal(1.0, 1.0, 1.0); }

Matrix3c Matrix3c::Diagonal(double d0, double d1, double d2) {
  Matrix3c m;
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  return m;
}

Matrix3c Matrix3c::Outer(const Vector3c& k) {
  Matrix3c m;
  for (int r = 0; r < 3; ++r) {
    m(r, r) = std::norm(k[r]);
    for (int c = r + 1; c < 3; ++c) {
      m(r, c) = k[r] * std::conj(k[c]);
      m(c, r) = std::conj(m(r, c));
    }
  }
  return m;
}

double Matrix3c::Trace() const {
  return a[0].real() + a[4].real() + a[8].real();
}

double Matrix3c::FrobeniusNorm() const {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

cdouble Matrix3c::Determinant() const {
  const Matrix3c& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Matrix3c Matrix3c::Adjoint() const {
  Matrix3c t;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t(r, c) = std::conj((*this)(c, r));
  return t;
}

Vector3c Matrix3c::Row(int r) const {
  return Vector3c{{(*this)(r, 0), (*this)(r, 1), (*this)(r, 2)}};
}

Matrix3c& Matrix3c::operator+=(const Matrix3c& o) {
  for (int i = 0; i < 9; ++i) a[i] += o.a[i];
  return *this;
}

Matrix3c& Matrix3c::operator-=(const Matrix3c& o) {
  for (int i = 0; i < 9; ++i) a[i] -= o.a[i];
  return *this;
}

Matrix3c& Matrix3c::operator*=(double s) {
  for (auto& x : a) x *= s;
  return *this;
}

Matrix3c operator+(Matrix3c lhs, const Matrix3c& rhs) { return lhs += rhs; }
Matrix3c operator-(Matrix3c lhs, const Matrix3c& rhs) { return lhs -= rhs; }
Matrix3c operator*(Matrix3c lhs, double s) { return lhs *= s; }

Matrix3c operator*(const Matrix3c& lhs, const Matrix3c& rhs) {
  Matrix3c out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      out(r, c) = lhs(r, 0) * rhs(0, c) + lhs(r, 1) * rhs(1, c) +
                  lhs(r, 2) * rhs(2, c);
  return out;
}

Vector3c operator*(const Matrix3c& m, const Vector3c& x) {
  Vector3c y;
  for (int r = 0; r < 3; ++r)
    y[r] = m(r, 0) * x[0] + m(r, 1) * x[1] + m(r, 2) * x[2];
  return y;
}

double HermitianDefect(const Matrix3c& m) {
  double worst = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = r; c < 3; ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

bool Invert(const Matrix3c& m, Matrix3c* inverse) {
  const cdouble det = m.Determinant();
  if (!std::isfinite(det.real()) || !std::isfinite(det.imag()) ||
      std::abs(det) == 0.0) {
    return false;
  }
  Matrix3c adj;
  adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const cdouble inv_det = 1.0 / det;
  for (int i = 0; i < 9; ++i) inverse->a[i] = adj.a[i] * inv_det;
  return true;
}

}  // namespace polsar
