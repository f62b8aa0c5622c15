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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfa/matrix.h"
#include "qfa/row_eliminator.h"

namespace qfa {

/// Incrementally reduced basis of a subspace of T^d.
///
/// Exact scalars use fraction-free elimination with first-nonzero pivots;
/// float scalars use largest-magnitude pivots and call a residual negligible
/// when its largest entry is at most rank_epsilon * max(1, |input|).
template <Scalar T, class Tag>
class SpanBasis {
 public:
  struct Entry {
    std::size_t pivot;
    Tag tag;
  };

  explicit SpanBasis(std::size_t dimension, Tolerance tol = {}) : dimension_(dimension), rows_(dimension, tol) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  bool full() const { return entries_.size() == dimension_; }
  const std::vector<Entry>& entries() const { return entries_; }

  /// True when `v` lies in the current span.
  bool contains(const Matrix<T>& v) {
    check_shape(v);
    return !rows_.reduce(v).has_value();
  }

  /// Adds `v` when it is independent of the stored vectors. Returns whether it was added.
  bool insert(const Matrix<T>& v, Tag tag) {
    check_shape(v);
    std::optional<std::size_t> pivot = rows_.reduce(v);
    if (!pivot) return false;
    rows_.commit();
    entries_.push_back({*pivot, std::move(tag)});
    return true;
  }

 private:
  void check_shape(const Matrix<T>& v) const {
    if (v.rows() != 1 || v.cols() != dimension_) {
      throw std::invalid_argument("span basis of dimension " + std::to_string(dimension_) +
                                  " cannot take a " + v.shape_string() + " vector");
    }
  }

  std::size_t dimension_;
  RowEliminator<T> rows_;
  std::vector<Entry> entries_;
};

}  // namespace qfa
