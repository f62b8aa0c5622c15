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

#include <gtest/gtest.h>

#include "qfa/equivalence.h"
#include "qfa/machines.h"
#include "qfa/mm_analysis.h"
#include "random_machines.h"

using namespace qfa;
using qfa::testing::ExactMatrix;
using qfa::testing::MachineGenerator;

namespace {

ExactScalar q(long p, long d = 1) { return QSqrt2(make_rational(p, d)); }
QSqrt2 r(long p, long d = 1) { return QSqrt2(make_rational(p, d)); }

Qsm<ExactScalar> one_state_qsm(ExactScalar a0, ExactScalar a1) {
  Qsm<ExactScalar> m;
  m.states = 1;
  m.initial = 0;
  m.inputs = {"a"};
  m.outputs = {"0", "1"};
  m.transitions = {ExactMatrix{{std::move(a0)}}, ExactMatrix{{std::move(a1)}}};
  return m;
}

Qsm<ExactScalar> coin() { return one_state_qsm(ExactScalar::inv_sqrt2(), ExactScalar::inv_sqrt2()); }

Mo1qfa<ExactScalar> hadamard_mo1qfa(std::vector<std::size_t> accepting) {
  ExactScalar h = ExactScalar::inv_sqrt2();
  Mo1qfa<ExactScalar> a;
  a.states = 2;
  a.initial = 0;
  a.alphabet = {"a"};
  a.transitions = {ExactMatrix{{h, h}, {h, -h}}};
  a.accepting = std::move(accepting);
  return a;
}

}  // namespace

TEST(validate, coin_qsm_is_complete) { EXPECT_TRUE(validate(coin()).empty()); }

TEST(validate, overcomplete_qsm_names_the_input) {
  auto v = validate(one_state_qsm(q(1), q(1)));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].location, "input a");
  EXPECT_NE(v[0].message.find("completeness"), std::string::npos);
}

TEST(validate, structural_problems) {
  Qsm<ExactScalar> m = coin();
  m.initial = 3;
  EXPECT_FALSE(validate(m).empty());
  m = coin();
  m.outputs = {"0", "0"};
  EXPECT_FALSE(validate(m).empty());
  m = coin();
  m.transitions[1] = ExactMatrix::identity(2);
  EXPECT_FALSE(validate(m).empty());
  m = coin();
  m.inputs.clear();
  m.transitions.clear();
  EXPECT_FALSE(validate(m).empty());
}

TEST(validate, counterexample_mm1qfa_is_unitary) {
  auto m = counterexample_machine();
  EXPECT_TRUE(validate(m).empty());
  // Unitarity checked directly, independent of validate().
  for (const auto& u : m.transitions) EXPECT_EQ(u * u.adjoint(), ExactMatrix::identity(4));
  EXPECT_TRUE(validate(counterexample_machine(Completion::kAlternate)).empty());
}

TEST(validate, mm1qfa_overlapping_halting_sets) {
  auto m = counterexample_machine();
  m.rejecting.push_back(2);
  EXPECT_FALSE(validate(m).empty());
}

TEST(validate, mo1qfa_requires_unitary_and_valid_accepting_set) {
  auto a = hadamard_mo1qfa({1});
  EXPECT_TRUE(validate(a).empty());
  a.accepting = {5};
  EXPECT_FALSE(validate(a).empty());
  a = hadamard_mo1qfa({1});
  a.transitions[0](0, 0) = q(1);
  EXPECT_FALSE(validate(a).empty());
}

TEST(validate, probabilistic_automaton_restrictions) {
  Blm<ExactScalar> pa;
  pa.states = 2;
  pa.stochastic = true;
  pa.alphabet = {"s"};
  pa.initial = ExactMatrix{{q(1, 3), q(2, 3)}};
  pa.final = ExactMatrix{{q(1)}, {q(0)}};
  pa.transitions = {ExactMatrix{{q(1, 2), q(1, 2)}, {q(0), q(1)}}};
  EXPECT_TRUE(validate(pa).empty());
  pa.transitions[0](1, 0) = q(-1);
  pa.transitions[0](1, 1) = q(2);
  EXPECT_FALSE(validate(pa).empty());
  pa.stochastic = false;
  EXPECT_TRUE(validate(pa).empty());
}

TEST(qsm_probability, empty_pair_is_certain) {
  MachineGenerator gen(9);
  for (int k = 0; k < 10; ++k) {
    auto m = gen.random_qsm(gen.uniform(1, 3));
    EXPECT_EQ(qsm_probability(m, {}), r(1));
  }
}

TEST(qsm_probability, coin_machine) {
  EXPECT_EQ(qsm_probability(coin(), {{0}, {0}}), r(1, 2));
  EXPECT_EQ(qsm_probability(coin(), {{0, 0}, {0, 1}}), r(1, 4));
}

TEST(qsm_probability, errors) {
  EXPECT_THROW(qsm_probability(coin(), {{0}, {}}), std::invalid_argument);
  EXPECT_THROW(qsm_probability(coin(), {{1}, {0}}), std::out_of_range);
  EXPECT_THROW(qsm_probability(coin(), {{0}, {2}}), std::out_of_range);
  auto u = coin();
  u.initial.reset();
  EXPECT_THROW(qsm_probability(u, {{0}, {0}}), std::invalid_argument);
}

TEST(qsm_probability, norm_form_matches_gram_form) {
  // ||eta A||^2 against eta A A^dagger eta^dagger, and probabilities of all
  // outputs for a fixed input sum to 1.
  MachineGenerator gen(10);
  for (int k = 0; k < 10; ++k) {
    auto m = gen.random_qsm(gen.uniform(1, 3));
    QSqrt2 total;
    for (std::size_t y0 = 0; y0 < 2; ++y0) {
      for (std::size_t y1 = 0; y1 < 2; ++y1) {
        InputOutputPair p{{0, 0}, {y0, y1}};
        ExactMatrix a = transition_product(m, p);
        ExactMatrix eta = ExactMatrix::basis_row(m.states, *m.initial);
        ExactScalar gram = (eta * a * a.adjoint() * eta.adjoint())(0, 0);
        QSqrt2 p1 = qsm_probability(m, p);
        EXPECT_EQ(gram, ExactScalar(p1));
        EXPECT_GE(p1, r(0));
        EXPECT_LE(p1, r(1));
        total += p1;
      }
    }
    EXPECT_EQ(total, r(1));
  }
}

TEST(uqsm_probability, embedded_distributions_reproduce_each_machine) {
  MachineGenerator gen(12);
  for (int k = 0; k < 10; ++k) {
    auto m1 = gen.random_qsm(gen.uniform(1, 3));
    auto m2 = gen.random_qsm(gen.uniform(1, 3));
    auto sum = qsm_direct_sum(m1, m2);
    for (std::size_t len = 0; len <= 3; ++len) {
      InputOutputPair p{Word(len, 0), Word(len)};
      for (auto& y : p.output) y = gen.uniform(0, 1);
      EXPECT_EQ(uqsm_probability(sum.machine, sum.rho, p), qsm_probability(m1, p));
      EXPECT_EQ(uqsm_probability(sum.machine, sum.rho_prime, p), qsm_probability(m2, p));
      EXPECT_EQ(uqsm_probability(m1, ExactMatrix::basis_row(m1.states, *m1.initial), p), qsm_probability(m1, p));
    }
  }
}

TEST(uqsm_probability, dimension_mismatch) {
  EXPECT_THROW(uqsm_probability(coin(), ExactMatrix(1, 2), {}), std::invalid_argument);
}

TEST(blm_word_value, scalar_machine) {
  Blm<ExactScalar> b;
  b.states = 1;
  b.alphabet = {"s"};
  b.initial = ExactMatrix{{q(1)}};
  b.final = ExactMatrix{{q(1)}};
  b.transitions = {ExactMatrix{{q(1, 2)}}};
  EXPECT_EQ(blm_word_value(b, {0}), q(1, 2));
  EXPECT_EQ(blm_word_value(b, {}), q(1));
  EXPECT_THROW(blm_word_value(b, {1}), std::out_of_range);
}

TEST(mo1qfa_probability, trivial_accepting_sets) {
  MachineGenerator gen(13);
  for (int k = 0; k < 10; ++k) {
    auto a = gen.random_mo1qfa(gen.uniform(1, 3));
    a.accepting.clear();
    for (std::size_t s = 0; s < a.states; ++s) a.accepting.push_back(s);
    Word u(gen.uniform(0, 4));
    for (auto& s : u) s = gen.uniform(0, 1);
    EXPECT_EQ(mo1qfa_probability(a, u), r(1));
    a.accepting.clear();
    EXPECT_EQ(mo1qfa_probability(a, u), r(0));
  }
}

TEST(mo1qfa_probability, hadamard_half) {
  EXPECT_EQ(mo1qfa_probability(hadamard_mo1qfa({1}), {0}), r(1, 2));
  EXPECT_EQ(mo1qfa_probability(hadamard_mo1qfa({1}), {0, 0}), r(0));
  EXPECT_EQ(mo1qfa_probability(hadamard_mo1qfa({1}), {}), r(0));
}

TEST(acceptance_operator, conjugated_projector_properties) {
  MachineGenerator gen(14);
  for (int k = 0; k < 10; ++k) {
    auto a = gen.random_mo1qfa(gen.uniform(1, 3));
    Word u(gen.uniform(0, 4));
    for (auto& s : u) s = gen.uniform(0, 1);
    ExactMatrix f = acceptance_operator(a, u);
    EXPECT_EQ(f * f, f);
    EXPECT_EQ(f.adjoint(), f);
    EXPECT_EQ(f(a.initial, a.initial), ExactScalar(mo1qfa_probability(a, u)));
  }
}

TEST(mm1qfa_run, counterexample_word_aa) {
  auto out = mm1qfa_run(counterexample_machine(), {0, 0});
  EXPECT_EQ(out.accept, QSqrt2(make_rational(5, 8), make_rational(1, 4)));
  EXPECT_EQ(out.accept + out.reject + out.residual, r(1));
  EXPECT_EQ(out.residual, r(0));
}

TEST(mm1qfa_run, counterexample_single_symbol) {
  // Replayed by hand: U_a|q0> = 1/2|q0> + 1/sqrt2|q1> + 1/2|q_acc> accepts
  // with 1/4 and leaves 1/2|q0> + 1/sqrt2|q1>. U_$ sends q0 -> q_acc and
  // q1 -> q_rej, accepting another (1/2)^2 and rejecting (1/sqrt2)^2.
  auto out = mm1qfa_run(counterexample_machine(), {0});
  EXPECT_EQ(out.accept, r(1, 4) + r(1, 4));
  EXPECT_EQ(out.reject, r(1, 2));
  EXPECT_EQ(out.residual, r(0));
}

TEST(mm1qfa_run, no_accepting_states_never_accepts) {
  MachineGenerator gen(15);
  auto m = gen.random_mm1qfa(3);
  m.accepting.clear();
  for (Word w : {Word{}, Word{0}, Word{1, 0, 1}}) EXPECT_EQ(mm1qfa_run(m, w).accept, r(0));
}

TEST(mm1qfa_run, trace_matches_printed_amplitudes) {
  auto steps = mm1qfa_trace(counterexample_machine(), {0, 0});
  ASSERT_EQ(steps.size(), 3u);
  ExactScalar h = q(1, 2), s = ExactScalar::inv_sqrt2();
  EXPECT_EQ(steps[0].residue, (ExactMatrix{{h, s, q(0), q(0)}}));
  EXPECT_EQ(steps[0].accept_increment, r(1, 4));
  ExactScalar c = h * (h + s);
  EXPECT_EQ(steps[1].evolved, (ExactMatrix{{c, s * (h - s), c, q(0)}}));
  EXPECT_EQ(steps[1].accept_increment, c.norm_sq());
  EXPECT_EQ(steps[2].accept_increment, c.norm_sq());
  EXPECT_EQ(steps[2].reject_increment, (s * (h - s)).norm_sq());
  EXPECT_EQ(steps[2].symbol, 1u);
}

TEST(mm1qfa_run, unknown_symbol) {
  EXPECT_THROW(mm1qfa_run(counterexample_machine(), {1}), std::out_of_range);
}

TEST(mm1qfa_run, completion_does_not_matter) {
  auto a = counterexample_machine(Completion::kStandard);
  auto b = counterexample_machine(Completion::kAlternate);
  ASSERT_NE(a, b);
  for (std::size_t len = 0; len <= 6; ++len) {
    Word w(len, 0);
    auto x = mm1qfa_run(a, w);
    auto y = mm1qfa_run(b, w);
    EXPECT_EQ(x.accept, y.accept);
    EXPECT_EQ(x.reject, y.reject);
    EXPECT_EQ(x.residual, y.residual);
  }
}

TEST(mog1qfa_value, empty_accepting_set_and_unitary_agreement) {
  MachineGenerator gen(16);
  auto a = gen.random_mo1qfa(3);
  Mog1qfa<ExactScalar> g;
  g.states = a.states;
  g.initial = a.initial;
  g.alphabet = a.alphabet;
  g.transitions = a.transitions;
  g.transitions.push_back(ExactMatrix::identity(a.states));
  g.accepting = a.accepting;
  for (Word u : {Word{}, Word{0}, Word{1, 1}, Word{0, 1, 0}}) {
    EXPECT_EQ(mog1qfa_value(g, u), mo1qfa_probability(a, u));
  }
  g.accepting.clear();
  EXPECT_EQ(mog1qfa_value(g, {0, 1}), r(0));
}

TEST(encode_word, maps_names_and_rejects_unknown) {
  Alphabet a{"x", "yy"};
  std::vector<std::string> ok{"yy", "x"};
  EXPECT_EQ(encode_word(a, ok), (Word{1, 0}));
  std::vector<std::string> bad{"z"};
  EXPECT_THROW(encode_word(a, bad), std::out_of_range);
  EXPECT_EQ(decode_word(a, {0, 1}), (std::vector<std::string>{"x", "yy"}));
}

TEST(float_backend, matches_exact_backend) {
  MachineGenerator gen(17);
  auto m = gen.random_qsm(3);
  auto f = to_float(m);
  EXPECT_TRUE(validate(f).empty());
  InputOutputPair p{{0, 0, 0}, {1, 0, 1}};
  EXPECT_NEAR(qsm_probability(f, p), qsm_probability(m, p).to_double(), 1e-12);
  auto mm = counterexample_machine();
  EXPECT_NEAR(mm1qfa_run(to_float(mm), {0, 0}).accept, 5.0 / 8.0 + 1.0 / (2.0 * std::sqrt(2.0)), 1e-12);
}
