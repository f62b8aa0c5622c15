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

#include "qfa/mm_analysis.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qfa/literal.h"

namespace qfa {

template <Scalar T>
Mog1qfa<T> koshiba_construct(const Mm1qfa<T>& m) {
  if (m.accepting.empty()) throw std::invalid_argument("construction needs at least one accepting state");
  auto is_accepting = [&](std::size_t q) {
    return std::find(m.accepting.begin(), m.accepting.end(), q) != m.accepting.end();
  };
  if (is_accepting(m.initial)) throw std::invalid_argument("initial state is accepting");

  constexpr std::size_t kDropped = static_cast<std::size_t>(-1);
  std::vector<std::size_t> new_index(m.states, kDropped);
  std::size_t kept = 0;
  for (std::size_t q = 0; q < m.states; ++q) {
    if (!is_accepting(q)) new_index[q] = kept++;
  }
  const std::size_t symbols = m.alphabet.size() + 1;
  const std::size_t n = kept + symbols;

  Mog1qfa<T> out;
  out.states = n;
  out.initial = new_index[m.initial];
  out.alphabet = m.alphabet;
  for (std::size_t s = 0; s < symbols; ++s) out.accepting.push_back(kept + s);

  for (std::size_t s = 0; s < symbols; ++s) {
    const Matrix<T>& u = m.transitions[s];
    const std::size_t sink = kept + s;
    Matrix<T> v(n, n);
    for (std::size_t q = 0; q < m.states; ++q) {
      if (new_index[q] == kDropped) continue;
      for (std::size_t t = 0; t < m.states; ++t) {
        const T& amp = u(q, t);
        if (ScalarTraits<T>::is_zero(amp)) continue;
        std::size_t target = new_index[t] == kDropped ? sink : new_index[t];
        v(new_index[q], target) += amp;
      }
    }
    for (std::size_t k = kept; k < n; ++k) v(k, k) = T(1);
    out.transitions.push_back(std::move(v));
  }
  return out;
}

template Mog1qfa<ExactScalar> koshiba_construct(const Mm1qfa<ExactScalar>&);
template Mog1qfa<FloatScalar> koshiba_construct(const Mm1qfa<FloatScalar>&);

Mm1qfa<ExactScalar> counterexample_machine(Completion completion) {
  const ExactScalar h = QSqrt2(make_rational(1, 2));
  const ExactScalar r = ExactScalar::inv_sqrt2();
  const ExactScalar z = 0;
  const ExactScalar o = 1;

  Mm1qfa<ExactScalar> m;
  m.states = 4;
  m.initial = 0;
  m.alphabet = {"a"};
  m.accepting = {2};
  m.rejecting = {3};

  // Rows: images of q0, q1, q_acc, q_rej.
  Matrix<ExactScalar> ua;
  Matrix<ExactScalar> ue;
  if (completion == Completion::kStandard) {
    ua = {{h, r, h, z}, {h, -r, h, z}, {r, z, -r, z}, {z, z, z, o}};
    ue = {{z, z, o, z}, {z, z, z, o}, {o, z, z, z}, {z, o, z, z}};
  } else {
    const ExactScalar i = ExactScalar::imaginary_unit();
    ua = {{h, r, h, z}, {h, -r, h, z}, {z, z, z, -o}, {i * r, z, -(i * r), z}};
    ue = {{z, z, o, z}, {z, z, z, o}, {z, o, z, z}, {o, z, z, z}};
  }
  m.transitions = {std::move(ua), std::move(ue)};
  return m;
}

CounterexampleReport counterexample_demo() {
  CounterexampleReport rep;
  rep.original = counterexample_machine();
  rep.constructed = koshiba_construct(rep.original);
  rep.word = {0, 0};
  rep.trace = mm1qfa_trace(rep.original, rep.word);
  rep.measure_many_accept = mm1qfa_run(rep.original, rep.word).accept;
  rep.constructed_value = mog1qfa_value(rep.constructed, rep.word);
  rep.values_differ = rep.measure_many_accept != rep.constructed_value;
  rep.constructed_exceeds_one = rep.constructed_value > QSqrt2(1);
  return rep;
}

namespace {

std::string row_literal(const Matrix<ExactScalar>& row) {
  std::string out = "(";
  for (std::size_t k = 0; k < row.cols(); ++k) {
    if (k) out += ", ";
    out += format_literal(row(0, k));
  }
  return out + ")";
}

}  // namespace

std::string render_text(const CounterexampleReport& rep) {
  std::ostringstream os;
  os << "measure-many automaton on a a $\n";
  for (std::size_t k = 0; k < rep.trace.size(); ++k) {
    const auto& step = rep.trace[k];
    std::string sym = step.symbol < rep.original.alphabet.size() ? rep.original.alphabet[step.symbol]
                                                                 : std::string(kEndMarker);
    os << "  step " << k + 1 << " (" << sym << "): evolved " << row_literal(step.evolved) << "\n"
       << "    accept += " << format_literal(step.accept_increment) << "  reject += "
       << format_literal(step.reject_increment) << "\n";
  }
  os << "accepting probability (measure-many): " << format_radical(rep.measure_many_accept) << "  ["
     << format_literal(rep.measure_many_accept) << "]  ~ " << render_decimal(rep.measure_many_accept.to_double())
     << "\n";
  os << "constructed machine value:            " << format_radical(rep.constructed_value) << "  ["
     << format_literal(rep.constructed_value) << "]  ~ " << render_decimal(rep.constructed_value.to_double()) << "\n";
  os << "values differ: " << (rep.values_differ ? "yes" : "no") << "\n";
  os << "constructed value exceeds 1: " << (rep.constructed_exceeds_one ? "yes" : "no") << "\n";
  return os.str();
}

std::string render_json(const CounterexampleReport& rep) {
  using nlohmann::json;
  auto value = [](const QSqrt2& x) {
    return json{{"exact", format_literal(x)}, {"radical", format_radical(x)}, {"decimal", render_decimal(x.to_double())}};
  };
  json steps = json::array();
  for (const auto& step : rep.trace) {
    steps.push_back({{"symbol", step.symbol < rep.original.alphabet.size() ? rep.original.alphabet[step.symbol]
                                                                            : std::string(kEndMarker)},
                     {"accept_increment", value(step.accept_increment)},
                     {"reject_increment", value(step.reject_increment)}});
  }
  json doc = {{"command", "counterexample"},
              {"word", decode_word(rep.original.alphabet, rep.word)},
              {"measure_many_accept", value(rep.measure_many_accept)},
              {"constructed_value", value(rep.constructed_value)},
              {"values_differ", rep.values_differ},
              {"constructed_exceeds_one", rep.constructed_exceeds_one},
              {"trace", steps}};
  return doc.dump(2);
}

}  // namespace qfa
