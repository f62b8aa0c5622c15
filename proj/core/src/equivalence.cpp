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

#include "qfa/equivalence.h"

#include <deque>
#include <string>

#include "qfa/span_basis.h"

namespace qfa {
namespace {

template <Scalar T>
using Traits = ScalarTraits<T>;

template <class Machine>
void require_valid(const Machine& m, const Tolerance& tol, const char* which) {
  auto violations = validate(m, tol);
  if (violations.empty()) return;
  std::string msg = std::string(which) + " machine is invalid:";
  for (const auto& v : violations) msg += " [" + v.location + ": " + v.message + "]";
  throw std::invalid_argument(msg);
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + " alphabets differ");
}

template <Scalar T>
bool scalars_equal(const T& a, const T& b, const Tolerance& tol) {
  if constexpr (Traits<T>::is_exact) {
    return a == b;
  } else {
    return std::abs(a - b) <= tol.rank_epsilon * std::max({1.0, std::abs(a), std::abs(b)});
  }
}

template <Scalar T>
std::vector<Matrix<T>> adjoints(const std::vector<Matrix<T>>& ms) {
  std::vector<Matrix<T>> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(m.adjoint());
  return out;
}

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t acc = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (base != 0 && acc > kEnumerationBudget / base) {
      throw EnumerationBudgetError("enumeration of " + std::to_string(base) + "^" + std::to_string(exp) +
                                   " words exceeds the budget of " + std::to_string(kEnumerationBudget));
    }
    acc *= base;
  }
  return acc;
}

// Depth-first enumeration of all words of exactly `length` symbols in
// lexicographic order. `State` is advanced by `step(state, symbol)` and
// checked at the leaves by `differs(state)`. Returns the first differing word.
template <class State, class Step, class Differs>
std::optional<Word> first_mismatch(const State& root, std::size_t symbols, std::size_t length, Step& step,
                                   Differs& differs, std::size_t& visited) {
  Word word;
  std::optional<Word> found;
  std::function<bool(const State&)> dfs = [&](const State& s) -> bool {
    if (word.size() == length) {
      ++visited;
      if (differs(s)) {
        found = word;
        return true;
      }
      return false;
    }
    for (std::size_t sym = 0; sym < symbols; ++sym) {
      word.push_back(sym);
      bool stop = dfs(step(s, sym));
      word.pop_back();
      if (stop) return true;
    }
    return false;
  };
  dfs(root);
  return found;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kTree:
      return "tree";
    case Method::kBilinear:
      return "bilinear";
    case Method::kOracle:
      return "oracle";
  }
  return "unknown";
}

std::size_t witness_length(const Witness& w) {
  if (const auto* word = std::get_if<Word>(&w)) return word->size();
  if (const auto* pair = std::get_if<InputOutputPair>(&w)) return pair->length();
  return 0;
}

template <Scalar T>
QsmSum<T> qsm_direct_sum(const Qsm<T>& m1, const Qsm<T>& m2) {
  require_same_alphabet(m1.inputs, m2.inputs, "input");
  require_same_alphabet(m1.outputs, m2.outputs, "output");
  if (!m1.initial || !m2.initial) throw std::invalid_argument("both machines need an initial state");

  QsmSum<T> out;
  out.machine.states = m1.states + m2.states;
  out.machine.inputs = m1.inputs;
  out.machine.outputs = m1.outputs;
  out.machine.transitions.reserve(m1.transitions.size());
  for (std::size_t k = 0; k < m1.transitions.size(); ++k) {
    out.machine.transitions.push_back(direct_sum(m1.transitions[k], m2.transitions[k]));
  }
  out.rho = Matrix<T>::basis_row(out.machine.states, *m1.initial);
  out.rho_prime = Matrix<T>::basis_row(out.machine.states, m1.states + *m2.initial);
  return out;
}

template <Scalar T>
Verdict<T> qsm_equivalence_tree(const Qsm<T>& m1, const Qsm<T>& m2, const SearchOptions<T>& opts) {
  require_valid(m1, opts.tolerance, "first");
  require_valid(m2, opts.tolerance, "second");
  QsmSum<T> sum = qsm_direct_sum(m1, m2);
  const Qsm<T>& joint = sum.machine;
  const std::size_t n = joint.states;
  const std::size_t i0 = *m1.initial;
  const std::size_t j0 = m1.states + *m2.initial;
  const auto joint_adj = adjoints(joint.transitions);

  struct Node {
    Matrix<T> d;
    InputOutputPair tag;
  };

  Verdict<T> verdict;
  verdict.method = Method::kTree;
  verdict.basis_size_bound = n * n;
  verdict.witness_length_bound = n * n;

  SpanBasis<T, std::size_t> basis(n * n, opts.tolerance);
  std::vector<Node> collected;
  std::deque<Node> queue;
  queue.push_back({Matrix<T>::identity(n), {}});
  bool is_root = true;
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    ++verdict.nodes_visited;
    if (opts.on_node) opts.on_node(node.d);
    // D(eps|eps) roots the tree but is never part of the basis.
    if (!is_root) {
      if (!basis.insert(vectorize(node.d), collected.size())) continue;
    }
    is_root = false;
    for (std::size_t x = 0; x < joint.inputs.size(); ++x) {
      for (std::size_t y = 0; y < joint.outputs.size(); ++y) {
        std::size_t k = joint.pair_index(x, y);
        Node child{joint.transitions[k] * node.d * joint_adj[k], node.tag};
        child.tag.input.insert(child.tag.input.begin(), x);
        child.tag.output.insert(child.tag.output.begin(), y);
        queue.push_back(std::move(child));
      }
    }
    if (!node.tag.input.empty()) collected.push_back(std::move(node));
  }
  verdict.basis_size = basis.size();

  for (const Node& node : collected) {
    RealOf<T> lhs = Traits<T>::real_part(node.d(i0, i0));
    RealOf<T> rhs = Traits<T>::real_part(node.d(j0, j0));
    if (!Traits<T>::reals_equal(lhs, rhs, opts.tolerance)) {
      verdict.equivalent = false;
      verdict.witness = node.tag;
      verdict.values = std::array<T, 2>{Traits<T>::from_real(lhs), Traits<T>::from_real(rhs)};
      break;
    }
  }
  return verdict;
}

template <Scalar T>
Blm<T> bilinearize(const Qsm<T>& m) {
  if (!m.initial) throw std::invalid_argument("bilinearize needs an initial state");
  const std::size_t n = m.states;
  Blm<T> out;
  out.states = n * n;
  Matrix<T> eta = Matrix<T>::basis_row(n, *m.initial);
  out.initial = kron(eta, eta.conjugate());
  out.final = Matrix<T>(n * n, 1);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<T> h(n, 1);
    h(j, 0) = T(1);
    out.final += kron(h, h.conjugate());
  }
  for (std::size_t x = 0; x < m.inputs.size(); ++x) {
    for (std::size_t y = 0; y < m.outputs.size(); ++y) {
      out.alphabet.push_back("(" + m.outputs[y] + "|" + m.inputs[x] + ")");
      const auto& a = m.transition(x, y);
      out.transitions.push_back(kron(a, a.conjugate()));
    }
  }
  return out;
}

template <Scalar T>
Verdict<T> blm_equivalence(const Blm<T>& b1, const Blm<T>& b2, const SearchOptions<T>& opts) {
  require_valid(b1, opts.tolerance, "first");
  require_valid(b2, opts.tolerance, "second");
  require_same_alphabet(b1.alphabet, b2.alphabet, "symbol");
  const std::size_t n1 = b1.states;
  const std::size_t n = b1.states + b2.states;

  std::vector<Matrix<T>> joint;
  joint.reserve(b1.alphabet.size());
  for (std::size_t s = 0; s < b1.alphabet.size(); ++s) {
    joint.push_back(direct_sum(b1.transitions[s], b2.transitions[s]));
  }

  struct Node {
    Matrix<T> v;
    Word word;
  };

  Verdict<T> verdict;
  verdict.method = Method::kBilinear;
  verdict.basis_size_bound = n;
  verdict.witness_length_bound = n - 1;

  Matrix<T> root(1, n);
  for (std::size_t k = 0; k < n1; ++k) root(0, k) = b1.initial(0, k);
  for (std::size_t k = 0; k < b2.states; ++k) root(0, n1 + k) = b2.initial(0, k);

  SpanBasis<T, std::size_t> basis(n, opts.tolerance);
  std::vector<Node> collected;
  std::deque<Node> queue;
  queue.push_back({std::move(root), {}});
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    ++verdict.nodes_visited;
    if (opts.on_node) opts.on_node(node.v);
    if (!basis.insert(node.v, collected.size())) continue;
    for (std::size_t s = 0; s < joint.size(); ++s) {
      Node child{node.v * joint[s], node.word};
      child.word.push_back(s);
      queue.push_back(std::move(child));
    }
    collected.push_back(std::move(node));
  }
  verdict.basis_size = basis.size();

  for (const Node& node : collected) {
    T f1{};
    T f2{};
    for (std::size_t k = 0; k < n1; ++k) f1 += node.v(0, k) * b1.final(k, 0);
    for (std::size_t k = 0; k < b2.states; ++k) f2 += node.v(0, n1 + k) * b2.final(k, 0);
    if (!scalars_equal(f1, f2, opts.tolerance)) {
      verdict.equivalent = false;
      verdict.witness = node.word;
      verdict.values = std::array<T, 2>{f1, f2};
      break;
    }
  }
  return verdict;
}

template <Scalar T>
Verdict<T> qsm_equivalence_bilinear(const Qsm<T>& m1, const Qsm<T>& m2, const SearchOptions<T>& opts) {
  require_valid(m1, opts.tolerance, "first");
  require_valid(m2, opts.tolerance, "second");
  require_same_alphabet(m1.inputs, m2.inputs, "input");
  require_same_alphabet(m1.outputs, m2.outputs, "output");
  Verdict<T> verdict = blm_equivalence(bilinearize(m1), bilinearize(m2), opts);
  if (const auto* word = std::get_if<Word>(&verdict.witness)) {
    InputOutputPair pair;
    for (std::size_t sym : *word) {
      pair.input.push_back(sym / m1.outputs.size());
      pair.output.push_back(sym % m1.outputs.size());
    }
    verdict.witness = std::move(pair);
  }
  return verdict;
}

template <Scalar T>
Verdict<T> mo1qfa_equivalence(const Mo1qfa<T>& a1, const Mo1qfa<T>& a2, const SearchOptions<T>& opts) {
  require_valid(a1, opts.tolerance, "first");
  require_valid(a2, opts.tolerance, "second");
  require_same_alphabet(a1.alphabet, a2.alphabet, "symbol");
  const std::size_t n = a1.states + a2.states;
  const std::size_t q0 = a1.initial;
  const std::size_t p0 = a1.states + a2.initial;

  std::vector<Matrix<T>> joint;
  for (std::size_t s = 0; s < a1.alphabet.size(); ++s) {
    joint.push_back(direct_sum(a1.transitions[s], a2.transitions[s]));
  }
  const auto joint_adj = adjoints(joint);

  struct Node {
    Matrix<T> f;
    Word word;
  };

  Verdict<T> verdict;
  verdict.method = Method::kTree;
  verdict.basis_size_bound = n * n;
  verdict.witness_length_bound = n * n;

  // Unlike the QSM tree, the root F(eps) = P_acc is tested: the empty word
  // has its own acceptance probability.
  SpanBasis<T, std::size_t> basis(n * n, opts.tolerance);
  std::vector<Node> collected;
  std::deque<Node> queue;
  queue.push_back({direct_sum(a1.accepting_projector(), a2.accepting_projector()), {}});
  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    ++verdict.nodes_visited;
    if (opts.on_node) opts.on_node(node.f);
    if (!basis.insert(vectorize(node.f), collected.size())) continue;
    for (std::size_t s = 0; s < joint.size(); ++s) {
      Node child{joint[s] * node.f * joint_adj[s], node.word};
      child.word.insert(child.word.begin(), s);
      queue.push_back(std::move(child));
    }
    collected.push_back(std::move(node));
  }
  verdict.basis_size = basis.size();

  for (const Node& node : collected) {
    RealOf<T> lhs = Traits<T>::real_part(node.f(q0, q0));
    RealOf<T> rhs = Traits<T>::real_part(node.f(p0, p0));
    if (!Traits<T>::reals_equal(lhs, rhs, opts.tolerance)) {
      verdict.equivalent = false;
      verdict.witness = node.word;
      verdict.values = std::array<T, 2>{Traits<T>::from_real(lhs), Traits<T>::from_real(rhs)};
      break;
    }
  }
  return verdict;
}

template <Scalar T>
Verdict<T> brute_force_equivalence(const Qsm<T>& m1, const Qsm<T>& m2, std::size_t k, const Tolerance& tol) {
  require_same_alphabet(m1.inputs, m2.inputs, "input");
  require_same_alphabet(m1.outputs, m2.outputs, "output");
  if (!m1.initial || !m2.initial) throw std::invalid_argument("both machines need an initial state");
  const std::size_t symbols = m1.inputs.size() * m1.outputs.size();
  checked_power(symbols, k);

  using State = std::array<Matrix<T>, 2>;
  State root{Matrix<T>::basis_row(m1.states, *m1.initial), Matrix<T>::basis_row(m2.states, *m2.initial)};
  auto step = [&](const State& s, std::size_t sym) {
    return State{s[0] * m1.transitions[sym], s[1] * m2.transitions[sym]};
  };
  std::array<RealOf<T>, 2> at_leaf{};
  auto differs = [&](const State& s) {
    for (int side = 0; side < 2; ++side) {
      at_leaf[side] = RealOf<T>{};
      for (const auto& x : s[side].data()) at_leaf[side] += Traits<T>::norm_sq(x);
    }
    return !Traits<T>::reals_equal(at_leaf[0], at_leaf[1], tol);
  };

  Verdict<T> verdict;
  verdict.method = Method::kOracle;
  verdict.witness_length_bound = k;
  for (std::size_t len = 1; len <= k; ++len) {
    auto hit = first_mismatch(root, symbols, len, step, differs, verdict.nodes_visited);
    if (!hit) continue;
    InputOutputPair pair;
    for (std::size_t sym : *hit) {
      pair.input.push_back(sym / m1.outputs.size());
      pair.output.push_back(sym % m1.outputs.size());
    }
    verdict.equivalent = false;
    verdict.witness = std::move(pair);
    verdict.values = std::array<T, 2>{Traits<T>::from_real(at_leaf[0]), Traits<T>::from_real(at_leaf[1])};
    break;
  }
  return verdict;
}

template <Scalar T>
Verdict<T> brute_force_equivalence(const Mo1qfa<T>& a1, const Mo1qfa<T>& a2, std::size_t k, const Tolerance& tol) {
  require_same_alphabet(a1.alphabet, a2.alphabet, "symbol");
  const std::size_t symbols = a1.alphabet.size();
  checked_power(symbols, k);

  using State = std::array<Matrix<T>, 2>;
  State root{Matrix<T>::basis_row(a1.states, a1.initial), Matrix<T>::basis_row(a2.states, a2.initial)};
  auto step = [&](const State& s, std::size_t sym) {
    return State{s[0] * a1.transitions[sym], s[1] * a2.transitions[sym]};
  };
  std::array<RealOf<T>, 2> at_leaf{};
  auto differs = [&](const State& s) {
    at_leaf = {};
    for (std::size_t q : a1.accepting) at_leaf[0] += Traits<T>::norm_sq(s[0](0, q));
    for (std::size_t q : a2.accepting) at_leaf[1] += Traits<T>::norm_sq(s[1](0, q));
    return !Traits<T>::reals_equal(at_leaf[0], at_leaf[1], tol);
  };

  Verdict<T> verdict;
  verdict.method = Method::kOracle;
  verdict.witness_length_bound = k;
  for (std::size_t len = 0; len <= k; ++len) {
    auto hit = first_mismatch(root, symbols, len, step, differs, verdict.nodes_visited);
    if (!hit) continue;
    verdict.equivalent = false;
    verdict.witness = *hit;
    verdict.values = std::array<T, 2>{Traits<T>::from_real(at_leaf[0]), Traits<T>::from_real(at_leaf[1])};
    break;
  }
  return verdict;
}

template <Scalar T>
Verdict<T> brute_force_equivalence(const Blm<T>& b1, const Blm<T>& b2, std::size_t k, const Tolerance& tol) {
  require_same_alphabet(b1.alphabet, b2.alphabet, "symbol");
  const std::size_t symbols = b1.alphabet.size();
  checked_power(symbols, k);

  using State = std::array<Matrix<T>, 2>;
  State root{b1.initial, b2.initial};
  auto step = [&](const State& s, std::size_t sym) {
    return State{s[0] * b1.transitions[sym], s[1] * b2.transitions[sym]};
  };
  std::array<T, 2> at_leaf{};
  auto differs = [&](const State& s) {
    at_leaf = {(s[0] * b1.final)(0, 0), (s[1] * b2.final)(0, 0)};
    return !scalars_equal(at_leaf[0], at_leaf[1], tol);
  };

  Verdict<T> verdict;
  verdict.method = Method::kOracle;
  verdict.witness_length_bound = k;
  for (std::size_t len = 0; len <= k; ++len) {
    auto hit = first_mismatch(root, symbols, len, step, differs, verdict.nodes_visited);
    if (!hit) continue;
    verdict.equivalent = false;
    verdict.witness = *hit;
    verdict.values = at_leaf;
    break;
  }
  return verdict;
}

#define QFA_INSTANTIATE_EQUIVALENCE(T)                                                                  \
  template QsmSum<T> qsm_direct_sum(const Qsm<T>&, const Qsm<T>&);                                     \
  template Verdict<T> qsm_equivalence_tree(const Qsm<T>&, const Qsm<T>&, const SearchOptions<T>&);    \
  template Blm<T> bilinearize(const Qsm<T>&);                                                          \
  template Verdict<T> blm_equivalence(const Blm<T>&, const Blm<T>&, const SearchOptions<T>&);         \
  template Verdict<T> qsm_equivalence_bilinear(const Qsm<T>&, const Qsm<T>&, const SearchOptions<T>&); \
  template Verdict<T> mo1qfa_equivalence(const Mo1qfa<T>&, const Mo1qfa<T>&, const SearchOptions<T>&); \
  template Verdict<T> brute_force_equivalence(const Qsm<T>&, const Qsm<T>&, std::size_t, const Tolerance&); \
  template Verdict<T> brute_force_equivalence(const Mo1qfa<T>&, const Mo1qfa<T>&, std::size_t,         \
                                              const Tolerance&);                                       \
  template Verdict<T> brute_force_equivalence(const Blm<T>&, const Blm<T>&, std::size_t, const Tolerance&);

QFA_INSTANTIATE_EQUIVALENCE(ExactScalar)
QFA_INSTANTIATE_EQUIVALENCE(FloatScalar)
#undef QFA_INSTANTIATE_EQUIVALENCE

}  // namespace qfa
