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
#include <cmath>
#include <complex>
#include <string>
#include <string_view>

#include "qfa/exact_scalar.h"

namespace qfa {

/// Floating backend scalar.
using FloatScalar = std::complex<double>;

enum class Backend { kExact, kFloat };

std::string_view backend_name(Backend b);

/// Numerical thresholds used by the float backend. The exact backend ignores them.
struct Tolerance {
  /// Relative threshold for linear independence and identity checks.
  double rank_epsilon = 1e-9;
};

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactScalar> {
  using Real = QSqrt2;
  static constexpr Backend backend = Backend::kExact;
  static constexpr bool is_exact = true;

  static ExactScalar from_real(const Real& r) { return ExactScalar(r); }
  static ExactScalar conj(const ExactScalar& x) { return x.conj(); }
  static Real norm_sq(const ExactScalar& x) { return x.norm_sq(); }
  static Real real_part(const ExactScalar& x) { return x.real(); }
  static bool is_zero(const ExactScalar& x) { return x.is_zero(); }
  static double magnitude(const ExactScalar& x) { return std::sqrt(x.norm_sq().to_double()); }
  static double to_double(const Real& r) { return r.to_double(); }
  static bool reals_equal(const Real& a, const Real& b, const Tolerance&) { return a == b; }
};

template <>
struct ScalarTraits<FloatScalar> {
  using Real = double;
  static constexpr Backend backend = Backend::kFloat;
  static constexpr bool is_exact = false;

  static FloatScalar from_real(Real r) { return {r, 0.0}; }
  static FloatScalar conj(const FloatScalar& x) { return std::conj(x); }
  static Real norm_sq(const FloatScalar& x) { return std::norm(x); }
  static Real real_part(const FloatScalar& x) { return x.real(); }
  static bool is_zero(const FloatScalar& x) { return x == FloatScalar{}; }
  static double magnitude(const FloatScalar& x) { return std::abs(x); }
  static double to_double(Real r) { return r; }
  static bool reals_equal(Real a, Real b, const Tolerance& tol) {
    return std::abs(a - b) <= tol.rank_epsilon * std::max({1.0, std::abs(a), std::abs(b)});
  }
};

template <class T>
concept Scalar = requires { typename ScalarTraits<T>::Real; };

template <Scalar T>
using RealOf = typename ScalarTraits<T>::Real;

/// Decimal rendering with `digits` significant digits.
std::string render_decimal(double value, int digits = 12);

template <Scalar T>
std::string render_decimal(const RealOf<T>& value, int digits = 12) {
  return render_decimal(ScalarTraits<T>::to_double(value), digits);
}

}  // namespace qfa
