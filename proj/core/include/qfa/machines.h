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

// Machine models and their forward semantics.
//
// All models act on row vectors: a configuration <psi| evolves to <psi|A.
// Row k of an evolution matrix is therefore the image of basis state k.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfa/matrix.h"

namespace qfa {

using Word = std::vector<std::size_t>;
using Alphabet = std::vector<std::string>;

inline constexpr std::string_view kEndMarker = "$";

/// Equal-length input and output words, as symbol indices.
struct InputOutputPair {
  Word input;
  Word output;

  std::size_t length() const { return input.size(); }
  friend bool operator==(const InputOutputPair&, const InputOutputPair&) = default;
};

/// Quantum sequential machine. With `initial` unset it is an uninitiated QSM.
///
/// `transitions[x * outputs.size() + y]` holds A(y|x). Completeness requires
/// sum_y A(y|x) A(y|x)^dagger = I for every input x.
template <Scalar T>
struct Qsm {
  std::size_t states = 0;
  std::optional<std::size_t> initial;
  Alphabet inputs;
  Alphabet outputs;
  std::vector<Matrix<T>> transitions;

  std::size_t pair_index(std::size_t x, std::size_t y) const { return x * outputs.size() + y; }
  const Matrix<T>& transition(std::size_t x, std::size_t y) const { return transitions.at(pair_index(x, y)); }

  friend bool operator==(const Qsm&, const Qsm&) = default;
};

/// Bilinear machine computing f(w) = initial * M(w_1) ... M(w_m) * final.
/// With `stochastic` set it is validated as a probabilistic automaton.
template <Scalar T>
struct Blm {
  std::size_t states = 0;
  Matrix<T> initial;  // 1 x n
  Matrix<T> final;    // n x 1
  Alphabet alphabet;
  std::vector<Matrix<T>> transitions;
  bool stochastic = false;

  friend bool operator==(const Blm&, const Blm&) = default;
};

/// Measure-once one-way QFA with unitary evolutions.
template <Scalar T>
struct Mo1qfa {
  std::size_t states = 0;
  std::size_t initial = 0;
  Alphabet alphabet;
  std::vector<Matrix<T>> transitions;
  std::vector<std::size_t> accepting;

  Matrix<T> accepting_projector() const;
  friend bool operator==(const Mo1qfa&, const Mo1qfa&) = default;
};

/// Measure-many one-way QFA. `transitions` has one matrix per symbol of
/// `alphabet` followed by the end-marker matrix.
template <Scalar T>
struct Mm1qfa {
  std::size_t states = 0;
  std::size_t initial = 0;
  Alphabet alphabet;
  std::vector<Matrix<T>> transitions;
  std::vector<std::size_t> accepting;
  std::vector<std::size_t> rejecting;

  const Matrix<T>& end_marker() const { return transitions.back(); }
  friend bool operator==(const Mm1qfa&, const Mm1qfa&) = default;
};

/// Measure-once automaton whose evolutions need not be unitary. Laid out like
/// Mm1qfa: one matrix per symbol, then the end-marker matrix.
template <Scalar T>
struct Mog1qfa {
  std::size_t states = 0;
  std::size_t initial = 0;
  Alphabet alphabet;
  std::vector<Matrix<T>> transitions;
  std::vector<std::size_t> accepting;

  friend bool operator==(const Mog1qfa&, const Mog1qfa&) = default;
};

struct Violation {
  std::string location;
  std::string message;
};

template <Scalar T>
std::vector<Violation> validate(const Qsm<T>& m, const Tolerance& tol = {});
template <Scalar T>
std::vector<Violation> validate(const Blm<T>& m, const Tolerance& tol = {});
template <Scalar T>
std::vector<Violation> validate(const Mo1qfa<T>& m, const Tolerance& tol = {});
template <Scalar T>
std::vector<Violation> validate(const Mm1qfa<T>& m, const Tolerance& tol = {});
template <Scalar T>
std::vector<Violation> validate(const Mog1qfa<T>& m, const Tolerance& tol = {});

/// Maps symbol names to indices. Throws std::out_of_range on an unknown symbol.
Word encode_word(const Alphabet& alphabet, std::span<const std::string> symbols);
std::vector<std::string> decode_word(const Alphabet& alphabet, const Word& word);

/// A(v|u) = A(v_1|u_1) ... A(v_m|u_m).
template <Scalar T>
Matrix<T> transition_product(const Qsm<T>& m, const InputOutputPair& p);

/// ||eta_i0 A(v|u)||^2. Requires an initial state.
template <Scalar T>
RealOf<T> qsm_probability(const Qsm<T>& m, const InputOutputPair& p);

/// ||rho A(v|u)||^2 for an arbitrary 1 x n starting row vector.
template <Scalar T>
RealOf<T> uqsm_probability(const Qsm<T>& m, const Matrix<T>& rho, const InputOutputPair& p);

template <Scalar T>
T blm_word_value(const Blm<T>& m, const Word& w);

/// ||<q0| A(u) P_acc||^2.
template <Scalar T>
RealOf<T> mo1qfa_probability(const Mo1qfa<T>& m, const Word& u);

/// F(u) = A(u) P_acc A(u)^dagger, so that P(u) = <q0|F(u)|q0>.
template <Scalar T>
Matrix<T> acceptance_operator(const Mo1qfa<T>& m, const Word& u);

template <Scalar T>
struct MmStep {
  std::size_t symbol;        // index into alphabet; alphabet.size() denotes the end-marker
  Matrix<T> evolved;         // configuration right after the unitary
  RealOf<T> accept_increment;
  RealOf<T> reject_increment;
  Matrix<T> residue;         // unnormalized non-halting part
};

template <Scalar T>
struct MmOutcome {
  RealOf<T> accept;
  RealOf<T> reject;
  RealOf<T> residual;
};

/// Runs `w` followed by the end-marker, measuring after every symbol.
template <Scalar T>
std::vector<MmStep<T>> mm1qfa_trace(const Mm1qfa<T>& m, const Word& w);
template <Scalar T>
MmOutcome<T> mm1qfa_run(const Mm1qfa<T>& m, const Word& w);

/// Squared norm on the accepting states after reading `u` and the end-marker.
template <Scalar T>
RealOf<T> mog1qfa_value(const Mog1qfa<T>& m, const Word& u);

Qsm<FloatScalar> to_float(const Qsm<ExactScalar>& m);
Blm<FloatScalar> to_float(const Blm<ExactScalar>& m);
Mo1qfa<FloatScalar> to_float(const Mo1qfa<ExactScalar>& m);
Mm1qfa<FloatScalar> to_float(const Mm1qfa<ExactScalar>& m);
Mog1qfa<FloatScalar> to_float(const Mog1qfa<ExactScalar>& m);

#define QFA_EXTERN_MACHINES(T)                                                                        \
  extern template struct Mo1qfa<T>;                                                                   \
  extern template std::vector<Violation> validate(const Qsm<T>&, const Tolerance&);                  \
  extern template std::vector<Violation> validate(const Blm<T>&, const Tolerance&);                  \
  extern template std::vector<Violation> validate(const Mo1qfa<T>&, const Tolerance&);               \
  extern template std::vector<Violation> validate(const Mm1qfa<T>&, const Tolerance&);               \
  extern template std::vector<Violation> validate(const Mog1qfa<T>&, const Tolerance&);              \
  extern template Matrix<T> transition_product(const Qsm<T>&, const InputOutputPair&);               \
  extern template RealOf<T> qsm_probability(const Qsm<T>&, const InputOutputPair&);                  \
  extern template RealOf<T> uqsm_probability(const Qsm<T>&, const Matrix<T>&, const InputOutputPair&); \
  extern template T blm_word_value(const Blm<T>&, const Word&);                                       \
  extern template RealOf<T> mo1qfa_probability(const Mo1qfa<T>&, const Word&);                       \
  extern template Matrix<T> acceptance_operator(const Mo1qfa<T>&, const Word&);                      \
  extern template std::vector<MmStep<T>> mm1qfa_trace(const Mm1qfa<T>&, const Word&);                \
  extern template MmOutcome<T> mm1qfa_run(const Mm1qfa<T>&, const Word&);                            \
  extern template RealOf<T> mog1qfa_value(const Mog1qfa<T>&, const Word&);

QFA_EXTERN_MACHINES(ExactScalar)
QFA_EXTERN_MACHINES(FloatScalar)
#undef QFA_EXTERN_MACHINES

}  // namespace qfa
