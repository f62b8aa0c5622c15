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

// Equivalence deciders.
//
// Tree methods explore matrices D(v|u) = A(v|u) A(v|u)^dagger (QSMs) or
// F(u) = A(u) P_acc A(u)^dagger (MO-1QFAs) of the direct-sum machine in
// breadth-first order, pruning every node whose vectorization is already in
// the span of the collected ones. The collected set spans every reachable
// node, so comparing the two initial distributions on it decides
// equivalence. The bilinear method rewrites a QSM as an n^2-state bilinear
// machine and runs the prefix-tree reachability check on row vectors.

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>

#include "qfa/machines.h"

namespace qfa {

enum class Method { kTree, kBilinear, kOracle };

std::string_view method_name(Method m);

/// Either nothing (equivalent), a word (BLM / MO-1QFA) or an input-output pair (QSM).
using Witness = std::variant<std::monostate, Word, InputOutputPair>;

std::size_t witness_length(const Witness& w);

template <Scalar T>
struct Verdict {
  bool equivalent = true;
  Witness witness;
  /// Values of the first and second machine at the witness.
  std::optional<std::array<T, 2>> values;
  Method method = Method::kTree;
  std::size_t basis_size = 0;
  std::size_t nodes_visited = 0;
  /// Theoretical limits the run is held to.
  std::size_t witness_length_bound = 0;
  std::size_t basis_size_bound = 0;
};

template <Scalar T>
struct SearchOptions {
  Tolerance tolerance;
  /// Called with every dequeued tree node, pruned or not.
  std::function<void(const Matrix<T>&)> on_node;
};

class EnumerationBudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Upper bound on (symbols per step)^depth accepted by the brute-force oracle.
inline constexpr std::size_t kEnumerationBudget = 10'000'000;

/// Uninitiated direct-sum machine with the two embedded starting vectors.
template <Scalar T>
struct QsmSum {
  Qsm<T> machine;
  Matrix<T> rho;        // (eta_i0, 0)
  Matrix<T> rho_prime;  // (0, eta_j0)
};

template <Scalar T>
QsmSum<T> qsm_direct_sum(const Qsm<T>& m1, const Qsm<T>& m2);

template <Scalar T>
Verdict<T> qsm_equivalence_tree(const Qsm<T>& m1, const Qsm<T>& m2, const SearchOptions<T>& opts = {});

/// n^2-state BLM over the alphabet {(y|x)} (input-major order) with
/// M((y|x)) = A(y|x) (x) conj(A(y|x)), pi = eta (x) eta, final = sum_j h_j (x) h_j.
template <Scalar T>
Blm<T> bilinearize(const Qsm<T>& m);

template <Scalar T>
Verdict<T> blm_equivalence(const Blm<T>& b1, const Blm<T>& b2, const SearchOptions<T>& opts = {});

template <Scalar T>
Verdict<T> qsm_equivalence_bilinear(const Qsm<T>& m1, const Qsm<T>& m2, const SearchOptions<T>& opts = {});

template <Scalar T>
Verdict<T> mo1qfa_equivalence(const Mo1qfa<T>& a1, const Mo1qfa<T>& a2, const SearchOptions<T>& opts = {});

/// Compares every pair of length 1..k; the witness is the first mismatch in
/// length-then-lexicographic order. Throws EnumerationBudgetError when
/// (|I|*|O|)^k exceeds kEnumerationBudget.
template <Scalar T>
Verdict<T> brute_force_equivalence(const Qsm<T>& m1, const Qsm<T>& m2, std::size_t k, const Tolerance& tol = {});
/// Words of length 0..k.
template <Scalar T>
Verdict<T> brute_force_equivalence(const Mo1qfa<T>& a1, const Mo1qfa<T>& a2, std::size_t k,
                                   const Tolerance& tol = {});
/// Words of length 0..k.
template <Scalar T>
Verdict<T> brute_force_equivalence(const Blm<T>& b1, const Blm<T>& b2, std::size_t k, const Tolerance& tol = {});

#define QFA_EXTERN_EQUIVALENCE(T)                                                                              \
  extern template QsmSum<T> qsm_direct_sum(const Qsm<T>&, const Qsm<T>&);                                     \
  extern template Verdict<T> qsm_equivalence_tree(const Qsm<T>&, const Qsm<T>&, const SearchOptions<T>&);    \
  extern template Blm<T> bilinearize(const Qsm<T>&);                                                          \
  extern template Verdict<T> blm_equivalence(const Blm<T>&, const Blm<T>&, const SearchOptions<T>&);         \
  extern template Verdict<T> qsm_equivalence_bilinear(const Qsm<T>&, const Qsm<T>&, const SearchOptions<T>&); \
  extern template Verdict<T> mo1qfa_equivalence(const Mo1qfa<T>&, const Mo1qfa<T>&, const SearchOptions<T>&); \
  extern template Verdict<T> brute_force_equivalence(const Qsm<T>&, const Qsm<T>&, std::size_t,              \
                                                     const Tolerance&);                                       \
  extern template Verdict<T> brute_force_equivalence(const Mo1qfa<T>&, const Mo1qfa<T>&, std::size_t,        \
                                                     const Tolerance&);                                       \
  extern template Verdict<T> brute_force_equivalence(const Blm<T>&, const Blm<T>&, std::size_t, const Tolerance&);

QFA_EXTERN_EQUIVALENCE(ExactScalar)
QFA_EXTERN_EQUIVALENCE(FloatScalar)
#undef QFA_EXTERN_EQUIVALENCE

}  // namespace qfa
