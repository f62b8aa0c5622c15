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

#include "qfa/row_eliminator.h"

namespace qfa {

namespace {

// (a + b s)(c + d s) with s = sqrt2, written to (re, sq).
void mul_sqrt2(mpz_class& re, mpz_class& sq, const mpz_class& a, const mpz_class& b, const mpz_class& c,
               const mpz_class& d) {
  mpz_class t = a * c + 2 * b * d;
  sq = a * d + b * c;
  re = std::move(t);
}

IntegralScalar operator*(const IntegralScalar& x, const IntegralScalar& y) {
  mpz_class p_re, p_sq, q_re, q_sq, r_re, r_sq, s_re, s_sq;
  mul_sqrt2(p_re, p_sq, x.a, x.b, y.a, y.b);
  mul_sqrt2(q_re, q_sq, x.c, x.d, y.c, y.d);
  mul_sqrt2(r_re, r_sq, x.a, x.b, y.c, y.d);
  mul_sqrt2(s_re, s_sq, x.c, x.d, y.a, y.b);
  return {p_re - q_re, p_sq - q_sq, r_re + s_re, r_sq + s_sq};
}

void subtract(IntegralScalar& x, const IntegralScalar& y) {
  x.a -= y.a;
  x.b -= y.b;
  x.c -= y.c;
  x.d -= y.d;
}

IntegralScalar conj(const IntegralScalar& x) { return {x.a, x.b, -x.c, -x.d}; }

void divide_exact(IntegralScalar& x, const mpz_class& n) {
  for (mpz_class* p : {&x.a, &x.b, &x.c, &x.d}) mpz_divexact(p->get_mpz_t(), p->get_mpz_t(), n.get_mpz_t());
}

void accumulate_lcm(mpz_class& l, const Rational& q) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t()); }

mpz_class scaled(const Rational& q, const mpz_class& l) { return q.get_num() * (l / q.get_den()); }

}  // namespace

std::optional<std::size_t> RowEliminator<ExactScalar>::reduce(const Matrix<ExactScalar>& v) {
  mpz_class l = 1;
  for (const ExactScalar& x : v.data()) {
    for (const QSqrt2* part : {&x.real(), &x.imag()}) {
      accumulate_lcm(l, part->rational_part());
      accumulate_lcm(l, part->sqrt2_part());
    }
  }
  pending_.resize(dimension_);
  for (std::size_t k = 0; k < dimension_; ++k) {
    const ExactScalar& x = v.data()[k];
    pending_[k] = {scaled(x.real().rational_part(), l), scaled(x.real().sqrt2_part(), l),
                   scaled(x.imag().rational_part(), l), scaled(x.imag().sqrt2_part(), l)};
  }

  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const std::vector<IntegralScalar>& row = rows_[j];
    const IntegralScalar pivot = row[pivots_[j]];
    const IntegralScalar factor = pending_[pivots_[j]];
    const bool eliminate = !factor.is_zero();
    for (std::size_t c = 0; c < dimension_; ++c) {
      IntegralScalar t = pivot * pending_[c];
      if (eliminate && !row[c].is_zero()) subtract(t, factor * row[c]);
      if (j > 0) {
        t = t * divisors_[j - 1].cofactor;
        divide_exact(t, divisors_[j - 1].norm);
      }
      pending_[c] = std::move(t);
    }
  }

  for (std::size_t c = 0; c < dimension_; ++c) {
    if (!pending_[c].is_zero()) {
      pending_pivot_ = c;
      return c;
    }
  }
  return std::nullopt;
}

void RowEliminator<ExactScalar>::commit() {
  // 1/y = conj(y) * galois(|y|^2) / N, with N = |y|^2 * galois(|y|^2) an integer.
  const IntegralScalar& y = pending_[pending_pivot_];
  IntegralScalar m = y * conj(y);
  IntegralScalar galois{m.a, -m.b, 0, 0};
  Divisor div{conj(y) * galois, m.a * m.a - 2 * m.b * m.b};
  divisors_.push_back(std::move(div));
  pivots_.push_back(pending_pivot_);
  rows_.push_back(std::move(pending_));
  pending_.clear();
}

}  // namespace qfa
