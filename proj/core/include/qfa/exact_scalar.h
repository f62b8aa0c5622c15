// Copyright 2026 The qfa-equiv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace qfa {

using Rational = mpq_class;

/// Builds p/q in lowest terms. Throws std::domain_error when q == 0.
Rational make_rational(long p, long q = 1);

/// An element a + b*sqrt(2) of the real quadratic field Q(sqrt 2).
///
/// Both coordinates are kept canonical (lowest terms, positive denominator),
/// so structural equality is field equality.
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(Rational a, Rational b = Rational(0));  // NOLINT(google-explicit-constructor)
  QSqrt2(long a) : QSqrt2(Rational(a)) {}         // NOLINT(google-explicit-constructor)

  static QSqrt2 sqrt2() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  /// -1, 0 or +1; exact.
  int sign() const;
  /// a^2 - 2 b^2, the field norm down to Q.
  Rational field_norm() const;
  /// a - b*sqrt(2), the Galois conjugate.
  QSqrt2 galois_conjugate() const { return {a_, -b_}; }
  QSqrt2 inverse() const;
  double to_double() const;

  QSqrt2& operator+=(const QSqrt2& o);
  QSqrt2& operator-=(const QSqrt2& o);
  QSqrt2& operator*=(const QSqrt2& o);
  QSqrt2& operator/=(const QSqrt2& o);

  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
  friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }
  friend QSqrt2 operator-(const QSqrt2& x) { return {-x.a_, -x.b_}; }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QSqrt2& x, const QSqrt2& y) { return y < x; }
  friend bool operator<=(const QSqrt2& x, const QSqrt2& y) { return !(y < x); }
  friend bool operator>=(const QSqrt2& x, const QSqrt2& y) { return !(x < y); }

 private:
  Rational a_{0};
  Rational b_{0};
};

/// An element re + im*i of Q(sqrt 2, i), with re, im in Q(sqrt 2).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(QSqrt2 re, QSqrt2 im = QSqrt2()) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT
  ExactScalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)

  /// (a + b r2) + (c + d r2) i
  static ExactScalar from_parts(Rational a, Rational b, Rational c, Rational d);
  static ExactScalar inv_sqrt2() { return QSqrt2(Rational(0), Rational(1, 2)); }
  static ExactScalar imaginary_unit() { return {QSqrt2(), QSqrt2(1)}; }

  const QSqrt2& real() const { return re_; }
  const QSqrt2& imag() const { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  ExactScalar conj() const { return {re_, -im_}; }
  /// x * conj(x); always real and non-negative.
  QSqrt2 norm_sq() const { return re_ * re_ + im_ * im_; }
  ExactScalar inverse() const;

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar x, const ExactScalar& y) { return x += y; }
  friend ExactScalar operator-(ExactScalar x, const ExactScalar& y) { return x -= y; }
  friend ExactScalar operator*(ExactScalar x, const ExactScalar& y) { return x *= y; }
  friend ExactScalar operator/(ExactScalar x, const ExactScalar& y) { return x /= y; }
  friend ExactScalar operator-(const ExactScalar& x) { return {-x.re_, -x.im_}; }
  friend bool operator==(const ExactScalar& x, const ExactScalar& y) = default;

 private:
  QSqrt2 re_;
  QSqrt2 im_;
};

std::ostream& operator<<(std::ostream& os, const QSqrt2& x);
std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

}  // namespace qfa
