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

#include "qfa/machines.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qfa {
namespace {

template <Scalar T>
using Traits = ScalarTraits<T>;

template <Scalar T>
RealOf<T> row_norm_sq(const Matrix<T>& row) {
  RealOf<T> acc{};
  for (const auto& x : row.data()) acc += Traits<T>::norm_sq(x);
  return acc;
}

void check_symbol(std::size_t symbol, std::size_t alphabet_size) {
  if (symbol >= alphabet_size) {
    throw std::out_of_range("unknown symbol index " + std::to_string(symbol) + " (alphabet has " +
                            std::to_string(alphabet_size) + " symbols)");
  }
}

template <Scalar T>
void check_square(std::vector<Violation>& out, const Matrix<T>& m, std::size_t n, const std::string& where) {
  if (m.rows() != n || m.cols() != n) {
    out.push_back({where, "matrix is " + m.shape_string() + ", expected " + std::to_string(n) + "x" +
                              std::to_string(n)});
  }
}

template <Scalar T>
void check_unitary(std::vector<Violation>& out, const Matrix<T>& m, const std::string& where,
                   const Tolerance& tol) {
  if (!m.is_square()) return;
  if (!approx_equal(m * m.adjoint(), Matrix<T>::identity(m.rows()), tol)) {
    out.push_back({where, "U U^dagger != I (not unitary)"});
  }
}

void check_states(std::vector<Violation>& out, const std::vector<std::size_t>& set, std::size_t n,
                  const std::string& where) {
  std::set<std::size_t> seen;
  for (std::size_t s : set) {
    if (s >= n) out.push_back({where, "state " + std::to_string(s) + " out of range"});
    if (!seen.insert(s).second) out.push_back({where, "state " + std::to_string(s) + " listed twice"});
  }
}

void check_alphabet(std::vector<Violation>& out, const Alphabet& a, const std::string& where) {
  if (a.empty()) out.push_back({where, "alphabet is empty"});
  std::set<std::string> seen;
  for (const auto& s : a) {
    if (!seen.insert(s).second) out.push_back({where, "duplicate symbol '" + s + "'"});
    if (s == kEndMarker) out.push_back({where, "symbol '$' is reserved for the end-marker"});
  }
}

template <Scalar T>
bool is_nonnegative_real(const T& x, const Tolerance& tol) {
  if constexpr (Traits<T>::is_exact) {
    return x.imag().is_zero() && x.real().sign() >= 0;
  } else {
    return std::abs(x.imag()) <= tol.rank_epsilon && x.real() >= -tol.rank_epsilon;
  }
}

template <Scalar T>
bool sums_to_one(std::span<const T> xs, const Tolerance& tol) {
  T acc{};
  for (const auto& x : xs) acc += x;
  if constexpr (Traits<T>::is_exact) {
    return acc == T(1);
  } else {
    return std::abs(acc - T(1)) <= tol.rank_epsilon;
  }
}

template <Scalar T>
bool is_zero_or_one(const T& x, const Tolerance& tol) {
  if constexpr (Traits<T>::is_exact) {
    return x == T(0) || x == T(1);
  } else {
    return std::abs(x) <= tol.rank_epsilon || std::abs(x - T(1)) <= tol.rank_epsilon;
  }
}

template <Scalar T>
void check_stochastic_rows(std::vector<Violation>& out, const Matrix<T>& m, const std::string& where,
                           const Tolerance& tol) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    bool nonneg = std::all_of(row.begin(), row.end(), [&](const T& x) { return is_nonnegative_real(x, tol); });
    if (!nonneg || !sums_to_one(row, tol)) {
      out.push_back({where, "row " + std::to_string(r) + " is not a stochastic vector"});
    }
  }
}

template <Scalar T>
Matrix<T> projector(std::size_t n, const std::vector<std::size_t>& states) {
  Matrix<T> p(n, n);
  for (std::size_t s : states) p(s, s) = T(1);
  return p;
}

template <Scalar T>
RealOf<T> mass_on(const Matrix<T>& row, const std::vector<std::size_t>& states) {
  RealOf<T> acc{};
  for (std::size_t s : states) acc += Traits<T>::norm_sq(row(0, s));
  return acc;
}

}  // namespace

template <Scalar T>
Matrix<T> Mo1qfa<T>::accepting_projector() const {
  return projector<T>(states, accepting);
}

Word encode_word(const Alphabet& alphabet, std::span<const std::string> symbols) {
  Word w;
  w.reserve(symbols.size());
  for (const auto& s : symbols) {
    auto it = std::find(alphabet.begin(), alphabet.end(), s);
    if (it == alphabet.end()) throw std::out_of_range("unknown symbol '" + s + "'");
    w.push_back(static_cast<std::size_t>(it - alphabet.begin()));
  }
  return w;
}

std::vector<std::string> decode_word(const Alphabet& alphabet, const Word& word) {
  std::vector<std::string> out;
  out.reserve(word.size());
  for (std::size_t s : word) {
    check_symbol(s, alphabet.size());
    out.push_back(alphabet[s]);
  }
  return out;
}

template <Scalar T>
std::vector<Violation> validate(const Qsm<T>& m, const Tolerance& tol) {
  std::vector<Violation> out;
  check_alphabet(out, m.inputs, "inputs");
  check_alphabet(out, m.outputs, "outputs");
  if (m.states == 0) out.push_back({"states", "machine has no states"});
  if (m.initial && *m.initial >= m.states) {
    out.push_back({"initial", "initial state " + std::to_string(*m.initial) + " out of range"});
  }
  if (m.transitions.size() != m.inputs.size() * m.outputs.size()) {
    out.push_back({"transitions", "expected one matrix per (input, output) pair"});
    return out;
  }
  for (std::size_t x = 0; x < m.inputs.size(); ++x) {
    bool shapes_ok = true;
    for (std::size_t y = 0; y < m.outputs.size(); ++y) {
      std::size_t before = out.size();
      check_square(out, m.transition(x, y), m.states, "A(" + m.outputs[y] + "|" + m.inputs[x] + ")");
      shapes_ok = shapes_ok && out.size() == before;
    }
    if (!shapes_ok) continue;
    Matrix<T> sum(m.states, m.states);
    for (std::size_t y = 0; y < m.outputs.size(); ++y) {
      const auto& a = m.transition(x, y);
      sum += a * a.adjoint();
    }
    if (!approx_equal(sum, Matrix<T>::identity(m.states), tol)) {
      out.push_back({"input " + m.inputs[x], "sum_y A(y|" + m.inputs[x] + ") A(y|" + m.inputs[x] +
                                                 ")^dagger != I (completeness fails)"});
    }
  }
  return out;
}

template <Scalar T>
std::vector<Violation> validate(const Blm<T>& m, const Tolerance& tol) {
  std::vector<Violation> out;
  check_alphabet(out, m.alphabet, "alphabet");
  if (m.initial.rows() != 1 || m.initial.cols() != m.states) {
    out.push_back({"initial", "initial vector is " + m.initial.shape_string() + ", expected 1x" +
                                  std::to_string(m.states)});
  }
  if (m.final.rows() != m.states || m.final.cols() != 1) {
    out.push_back({"final", "final vector is " + m.final.shape_string() + ", expected " +
                                std::to_string(m.states) + "x1"});
  }
  if (m.transitions.size() != m.alphabet.size()) {
    out.push_back({"transitions", "expected one matrix per symbol"});
    return out;
  }
  for (std::size_t s = 0; s < m.alphabet.size(); ++s) {
    check_square(out, m.transitions[s], m.states, "M(" + m.alphabet[s] + ")");
  }
  if (m.stochastic && out.empty()) {
    check_stochastic_rows(out, m.initial, "initial", tol);
    for (std::size_t k = 0; k < m.states; ++k) {
      if (!is_zero_or_one(m.final(k, 0), tol)) {
        out.push_back({"final", "entry " + std::to_string(k) + " is not 0 or 1"});
      }
    }
    for (std::size_t s = 0; s < m.alphabet.size(); ++s) {
      check_stochastic_rows(out, m.transitions[s], "M(" + m.alphabet[s] + ")", tol);
    }
  }
  return out;
}

template <Scalar T>
std::vector<Violation> validate(const Mo1qfa<T>& m, const Tolerance& tol) {
  std::vector<Violation> out;
  check_alphabet(out, m.alphabet, "alphabet");
  if (m.initial >= m.states) out.push_back({"initial", "initial state out of range"});
  check_states(out, m.accepting, m.states, "accepting");
  if (m.transitions.size() != m.alphabet.size()) {
    out.push_back({"transitions", "expected one matrix per symbol"});
    return out;
  }
  for (std::size_t s = 0; s < m.alphabet.size(); ++s) {
    std::string where = "A(" + m.alphabet[s] + ")";
    std::size_t before = out.size();
    check_square(out, m.transitions[s], m.states, where);
    if (out.size() == before) check_unitary(out, m.transitions[s], where, tol);
  }
  return out;
}

template <Scalar T>
std::vector<Violation> validate(const Mm1qfa<T>& m, const Tolerance& tol) {
  std::vector<Violation> out;
  check_alphabet(out, m.alphabet, "alphabet");
  if (m.initial >= m.states) out.push_back({"initial", "initial state out of range"});
  check_states(out, m.accepting, m.states, "accepting");
  check_states(out, m.rejecting, m.states, "rejecting");
  for (std::size_t s : m.accepting) {
    if (std::find(m.rejecting.begin(), m.rejecting.end(), s) != m.rejecting.end()) {
      out.push_back({"rejecting", "state " + std::to_string(s) + " is both accepting and rejecting"});
    }
  }
  if (m.transitions.size() != m.alphabet.size() + 1) {
    out.push_back({"transitions", "expected one matrix per symbol plus the end-marker"});
    return out;
  }
  for (std::size_t s = 0; s <= m.alphabet.size(); ++s) {
    std::string where = "U(" + (s < m.alphabet.size() ? m.alphabet[s] : std::string(kEndMarker)) + ")";
    std::size_t before = out.size();
    check_square(out, m.transitions[s], m.states, where);
    if (out.size() == before) check_unitary(out, m.transitions[s], where, tol);
  }
  return out;
}

template <Scalar T>
std::vector<Violation> validate(const Mog1qfa<T>& m, const Tolerance&) {
  std::vector<Violation> out;
  check_alphabet(out, m.alphabet, "alphabet");
  if (m.initial >= m.states) out.push_back({"initial", "initial state out of range"});
  check_states(out, m.accepting, m.states, "accepting");
  if (m.transitions.size() != m.alphabet.size() + 1) {
    out.push_back({"transitions", "expected one matrix per symbol plus the end-marker"});
    return out;
  }
  for (std::size_t s = 0; s <= m.alphabet.size(); ++s) {
    check_square(out, m.transitions[s], m.states,
                 "U(" + (s < m.alphabet.size() ? m.alphabet[s] : std::string(kEndMarker)) + ")");
  }
  return out;
}

template <Scalar T>
Matrix<T> transition_product(const Qsm<T>& m, const InputOutputPair& p) {
  if (p.input.size() != p.output.size()) {
    throw std::invalid_argument("input-output pair has unequal lengths");
  }
  Matrix<T> acc = Matrix<T>::identity(m.states);
  for (std::size_t k = 0; k < p.length(); ++k) {
    check_symbol(p.input[k], m.inputs.size());
    check_symbol(p.output[k], m.outputs.size());
    acc = acc * m.transition(p.input[k], p.output[k]);
  }
  return acc;
}

template <Scalar T>
RealOf<T> uqsm_probability(const Qsm<T>& m, const Matrix<T>& rho, const InputOutputPair& p) {
  if (rho.rows() != 1 || rho.cols() != m.states) {
    throw std::invalid_argument("starting vector is " + rho.shape_string() + ", expected 1x" +
                                std::to_string(m.states));
  }
  if (p.input.size() != p.output.size()) {
    throw std::invalid_argument("input-output pair has unequal lengths");
  }
  Matrix<T> row = rho;
  for (std::size_t k = 0; k < p.length(); ++k) {
    check_symbol(p.input[k], m.inputs.size());
    check_symbol(p.output[k], m.outputs.size());
    row = row * m.transition(p.input[k], p.output[k]);
  }
  return row_norm_sq(row);
}

template <Scalar T>
RealOf<T> qsm_probability(const Qsm<T>& m, const InputOutputPair& p) {
  if (!m.initial) throw std::invalid_argument("machine has no initial state");
  return uqsm_probability(m, Matrix<T>::basis_row(m.states, *m.initial), p);
}

template <Scalar T>
T blm_word_value(const Blm<T>& m, const Word& w) {
  Matrix<T> row = m.initial;
  for (std::size_t s : w) {
    check_symbol(s, m.alphabet.size());
    row = row * m.transitions[s];
  }
  return (row * m.final)(0, 0);
}

template <Scalar T>
RealOf<T> mo1qfa_probability(const Mo1qfa<T>& m, const Word& u) {
  Matrix<T> row = Matrix<T>::basis_row(m.states, m.initial);
  for (std::size_t s : u) {
    check_symbol(s, m.alphabet.size());
    row = row * m.transitions[s];
  }
  return mass_on(row, m.accepting);
}

template <Scalar T>
Matrix<T> acceptance_operator(const Mo1qfa<T>& m, const Word& u) {
  Matrix<T> a = Matrix<T>::identity(m.states);
  for (std::size_t s : u) {
    check_symbol(s, m.alphabet.size());
    a = a * m.transitions[s];
  }
  return a * m.accepting_projector() * a.adjoint();
}

template <Scalar T>
std::vector<MmStep<T>> mm1qfa_trace(const Mm1qfa<T>& m, const Word& w) {
  for (std::size_t s : w) check_symbol(s, m.alphabet.size());
  Word full = w;
  full.push_back(m.alphabet.size());

  std::vector<MmStep<T>> steps;
  steps.reserve(full.size());
  Matrix<T> row = Matrix<T>::basis_row(m.states, m.initial);
  for (std::size_t s : full) {
    Matrix<T> evolved = row * m.transitions[s];
    RealOf<T> acc = mass_on(evolved, m.accepting);
    RealOf<T> rej = mass_on(evolved, m.rejecting);
    row = evolved;
    for (std::size_t q : m.accepting) row(0, q) = T();
    for (std::size_t q : m.rejecting) row(0, q) = T();
    steps.push_back({s, std::move(evolved), std::move(acc), std::move(rej), row});
  }
  return steps;
}

template <Scalar T>
MmOutcome<T> mm1qfa_run(const Mm1qfa<T>& m, const Word& w) {
  MmOutcome<T> out{};
  auto steps = mm1qfa_trace(m, w);
  for (const auto& step : steps) {
    out.accept += step.accept_increment;
    out.reject += step.reject_increment;
  }
  out.residual = row_norm_sq(steps.back().residue);
  return out;
}

template <Scalar T>
RealOf<T> mog1qfa_value(const Mog1qfa<T>& m, const Word& u) {
  Matrix<T> row = Matrix<T>::basis_row(m.states, m.initial);
  for (std::size_t s : u) {
    check_symbol(s, m.alphabet.size());
    row = row * m.transitions[s];
  }
  row = row * m.transitions.back();
  return mass_on(row, m.accepting);
}

Matrix<FloatScalar> to_float(const Matrix<ExactScalar>& m) {
  std::vector<FloatScalar> data;
  data.reserve(m.size());
  for (const auto& x : m.data()) data.emplace_back(x.real().to_double(), x.imag().to_double());
  return {m.rows(), m.cols(), std::move(data)};
}

namespace {
std::vector<Matrix<FloatScalar>> to_float(const std::vector<Matrix<ExactScalar>>& ms) {
  std::vector<Matrix<FloatScalar>> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(to_float(m));
  return out;
}
}  // namespace

Qsm<FloatScalar> to_float(const Qsm<ExactScalar>& m) {
  return {m.states, m.initial, m.inputs, m.outputs, to_float(m.transitions)};
}
Blm<FloatScalar> to_float(const Blm<ExactScalar>& m) {
  return {m.states, to_float(m.initial), to_float(m.final), m.alphabet, to_float(m.transitions), m.stochastic};
}
Mo1qfa<FloatScalar> to_float(const Mo1qfa<ExactScalar>& m) {
  return {m.states, m.initial, m.alphabet, to_float(m.transitions), m.accepting};
}
Mm1qfa<FloatScalar> to_float(const Mm1qfa<ExactScalar>& m) {
  return {m.states, m.initial, m.alphabet, to_float(m.transitions), m.accepting, m.rejecting};
}
Mog1qfa<FloatScalar> to_float(const Mog1qfa<ExactScalar>& m) {
  return {m.states, m.initial, m.alphabet, to_float(m.transitions), m.accepting};
}

#define QFA_INSTANTIATE_MACHINES(T)                                                           \
  template struct Mo1qfa<T>;                                                                  \
  template std::vector<Violation> validate(const Qsm<T>&, const Tolerance&);                  \
  template std::vector<Violation> validate(const Blm<T>&, const Tolerance&);                  \
  template std::vector<Violation> validate(const Mo1qfa<T>&, const Tolerance&);               \
  template std::vector<Violation> validate(const Mm1qfa<T>&, const Tolerance&);               \
  template std::vector<Violation> validate(const Mog1qfa<T>&, const Tolerance&);              \
  template Matrix<T> transition_product(const Qsm<T>&, const InputOutputPair&);               \
  template RealOf<T> qsm_probability(const Qsm<T>&, const InputOutputPair&);                  \
  template RealOf<T> uqsm_probability(const Qsm<T>&, const Matrix<T>&, const InputOutputPair&); \
  template T blm_word_value(const Blm<T>&, const Word&);                                       \
  template RealOf<T> mo1qfa_probability(const Mo1qfa<T>&, const Word&);                       \
  template Matrix<T> acceptance_operator(const Mo1qfa<T>&, const Word&);                      \
  template std::vector<MmStep<T>> mm1qfa_trace(const Mm1qfa<T>&, const Word&);                \
  template MmOutcome<T> mm1qfa_run(const Mm1qfa<T>&, const Word&);                            \
  template RealOf<T> mog1qfa_value(const Mog1qfa<T>&, const Word&);

QFA_INSTANTIATE_MACHINES(ExactScalar)
QFA_INSTANTIATE_MACHINES(FloatScalar)
#undef QFA_INSTANTIATE_MACHINES

}  // namespace qfa
