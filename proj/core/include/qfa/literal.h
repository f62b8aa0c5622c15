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

// Scalar literal syntax used by machine description files.
//
// Exact literals:
//
//     scalar := R | R " + " R " i" | R " i"
//     R      := p "/" q | p "/" q " + " p "/" q " r2"
//
// where p is a signed decimal integer, q a positive one and r2 stands for
// sqrt(2). Float literals follow the same shape with decimal reals and no r2.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "qfa/exact_scalar.h"
#include "qfa/scalar.h"

namespace qfa {

class LiteralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ExactScalar parse_exact_literal(std::string_view text);
FloatScalar parse_float_literal(std::string_view text);

std::string format_literal(const QSqrt2& x);
std::string format_literal(const ExactScalar& x);
/// Shortest round-trippable decimal rendering.
std::string format_literal(const FloatScalar& x);
std::string format_literal(double x);

/// Human-oriented form of a + b*sqrt2 using the radical sign, writing
/// b*sqrt2 as 1/(m√2) when b = 1/(2m): "5/8 + 1/(2√2)", "7/8 + 1/√2".
std::string format_radical(const QSqrt2& x);

template <Scalar T>
T parse_literal(std::string_view text) {
  if constexpr (ScalarTraits<T>::is_exact) {
    return parse_exact_literal(text);
  } else {
    return parse_float_literal(text);
  }
}

}  // namespace qfa
