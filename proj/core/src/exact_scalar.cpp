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

#include "qfa/exact_scalar.h"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "qfa/literal.h"

namespace qfa {

Rational make_rational(long p, long q) {
  if (q == 0) throw std::domain_error("rational with zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

QSqrt2::QSqrt2(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

int QSqrt2::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2. Equality is impossible for b != 0.
  return cmp(a_ * a_, 2 * b_ * b_) > 0 ? sa : sb;
}

Rational QSqrt2::field_norm() const { return a_ * a_ - 2 * b_ * b_; }

QSqrt2 QSqrt2::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(sqrt2)");
  Rational n = field_norm();
  return {a_ / n, -b_ / n};
}

double QSqrt2::to_double() const {
  long double v = static_cast<long double>(a_.get_d()) +
                  static_cast<long double>(b_.get_d()) * std::sqrt(2.0L);
  return static_cast<double>(v);
}

QSqrt2& QSqrt2::operator+=(const QSqrt2& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QSqrt2& QSqrt2::operator-=(const QSqrt2& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
  Rational a = a_ * o.a_ + 2 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QSqrt2& QSqrt2::operator/=(const QSqrt2& o) { return *this *= o.inverse(); }

ExactScalar ExactScalar::from_parts(Rational a, Rational b, Rational c, Rational d) {
  return {QSqrt2(std::move(a), std::move(b)), QSqrt2(std::move(c), std::move(d))};
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(sqrt2, i)");
  QSqrt2 inv_n = norm_sq().inverse();
  return {re_ * inv_n, -(im_ * inv_n)};
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  QSqrt2 re = re_ * o.re_ - im_ * o.im_;
  QSqrt2 im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

std::ostream& operator<<(std::ostream& os, const QSqrt2& x) { return os << format_literal(x); }
std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << format_literal(x); }

}  // namespace qfa
