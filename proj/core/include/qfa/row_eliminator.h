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

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "qfa/matrix.h"

namespace qfa {

/// Row-echelon storage behind SpanBasis. `reduce` returns the pivot column a
/// vector would take, or nothing when it lies in the span; `commit` then
/// stores the most recently reduced vector.
template <Scalar T>
class RowEliminator;

/// Element (a + b sqrt2) + (c + d sqrt2) i of the ring Z[sqrt2, i].
struct IntegralScalar {
  mpz_class a, b, c, d;

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0 && sgn(d) == 0; }
};

/// Fraction-free (Bareiss) elimination over Z[sqrt2, i].
///
/// Inputs are scaled to integral coordinates. Row k is stored after k
/// elimination steps, each ending in an exact division by the previous pivot,
/// so stored entries are minors of the input rows rather than ratios of them.
template <>
class RowEliminator<ExactScalar> {
 public:
  RowEliminator(std::size_t dimension, const Tolerance&) : dimension_(dimension) {}

  std::optional<std::size_t> reduce(const Matrix<ExactScalar>& v);
  void commit();
  std::size_t size() const { return rows_.size(); }

 private:
  struct Divisor {
    IntegralScalar cofactor;
    mpz_class norm;
  };

  std::size_t dimension_;
  std::vector<std::vector<IntegralScalar>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Divisor> divisors_;
  std::vector<IntegralScalar> pending_;
  std::size_t pending_pivot_ = 0;
};

/// Gaussian elimination with largest-magnitude pivots and unit-normalized rows.
template <>
class RowEliminator<FloatScalar> {
 public:
  RowEliminator(std::size_t dimension, const Tolerance& tol) : dimension_(dimension), tol_(tol) {}

  std::optional<std::size_t> reduce(const Matrix<FloatScalar>& v) {
    pending_.assign(v.data().begin(), v.data().end());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      FloatScalar factor = pending_[pivots_[k]];
      if (factor == FloatScalar{}) continue;
      for (std::size_t c = 0; c < dimension_; ++c) pending_[c] -= factor * rows_[k][c];
      pending_[pivots_[k]] = {};
    }
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t c = 0; c < dimension_; ++c) {
      double m = std::abs(pending_[c]);
      if (m > best_mag) {
        best_mag = m;
        best = c;
      }
    }
    if (best_mag <= tol_.rank_epsilon * std::max(1.0, v.max_abs())) return std::nullopt;
    pending_pivot_ = best;
    return best;
  }

  void commit() {
    FloatScalar inv = 1.0 / pending_[pending_pivot_];
    for (auto& x : pending_) x *= inv;
    pending_[pending_pivot_] = 1.0;
    rows_.push_back(std::move(pending_));
    pivots_.push_back(pending_pivot_);
    pending_.clear();
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t dimension_;
  Tolerance tol_;
  std::vector<std::vector<FloatScalar>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<FloatScalar> pending_;
  std::size_t pending_pivot_ = 0;
};

}  // namespace qfa
