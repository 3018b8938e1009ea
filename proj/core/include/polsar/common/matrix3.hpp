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

#ifndef POLSAR_COMMON_MATRIX3_HPP_
#define POLSAR_COMMON_MATRIX3_HPP_

#include <array>
#include <complex>

namespace polsar {

using cdouble = std::complex<double>;

struct Vector3c {
  std::array<cdouble, 3> v{};

  cdouble& operator[](int i) { return v[i]; }
  const cdouble& operator[](int i) const { return v[i]; }
  double SquaredNorm() const;
  double Norm() const;
};

// Hermitian inner product <a, b> = sum conj(a_i) b_i.
cdouble Dot(const Vector3c& a, const Vector3c& b);
// Plain (bilinear) cross product. For rows r0, r1 of a matrix M the result x
// satisfies sum_j M_ij x_j = 0 for i = 0, 1.
Vector3c Cross(const Vector3c& a, const Vector3c& b);
Vector3c Conj(const Vector3c& a);

// Dense 3x3 complex matrix, row-major.
struct Matrix3c {
  std::array<cdouble, 9> a{};

  cdouble& operator()(int r, int c) { return a[3 * r + c]; }
  const cdouble& operator()(int r, int c) const { return a[3 * r + c]; }

  static Matrix3c Identity();
  static Matrix3c Diagonal(double d0, double d1, double d2);
  // k k^H.
  static Matrix3c Outer(const Vector3c& k);

  double Trace() const;  // real part of the trace
  double FrobeniusNorm() const;
  cdouble Determinant() const;
  Matrix3c Adjoint() const;  // conjugate transpose
  Vector3c Row(int r) const;

  Matrix3c& operator+=(const Matrix3c& o);
  Matrix3c& operator-=(const Matrix3c& o);
  Matrix3c& operator*=(double s);
};

Matrix3c operator+(Matrix3c lhs, const Matrix3c& rhs);
Matrix3c operator-(Matrix3c lhs, const Matrix3c& rhs);
Matrix3c operator*(Matrix3c lhs, double s);
Matrix3c operator*(const Matrix3c& lhs, const Matrix3c& rhs);
Vector3c operator*(const Matrix3c& m, const Vector3c& x);

// Largest |M_ij - conj(M_ji)| over all entries (diagonal included).
double HermitianDefect(const Matrix3c& m);

// Inverse through the adjugate. Returns false when the determinant is zero or
// not finite.
bool Invert(const Matrix3c& m, Matrix3c* inverse);

}  // namespace polsar

#endif  // POLSAR_COMMON_MATRIX3_HPP_
