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

#include <gtest/gtest.h>

#include "random_machines.h"

using namespace qfa;
using qfa::testing::ExactMatrix;
using qfa::testing::MachineGenerator;

namespace {

ExactScalar q(long p, long d = 1) { return QSqrt2(make_rational(p, d)); }

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
Qsm<ExactScalar> stuck() { return one_state_qsm(q(1), q(0)); }

Blm<ExactScalar> scalar_blm(ExactScalar weight) {
  Blm<ExactScalar> b;
  b.states = 1;
  b.alphabet = {"s"};
  b.initial = ExactMatrix{{q(1)}};
  b.final = ExactMatrix{{q(1)}};
  b.transitions = {ExactMatrix{{std::move(weight)}}};
  return b;
}

Mo1qfa<ExactScalar> identity_mo1qfa() {
  Mo1qfa<ExactScalar> a;
  a.states = 1;
  a.initial = 0;
  a.alphabet = {"a"};
  a.transitions = {ExactMatrix{{q(1)}}};
  a.accepting = {0};
  return a;
}

Mo1qfa<ExactScalar> hadamard_mo1qfa() {
  ExactScalar h = ExactScalar::inv_sqrt2();
  Mo1qfa<ExactScalar> a;
  a.states = 2;
  a.initial = 0;
  a.alphabet = {"a"};
  a.transitions = {ExactMatrix{{h, h}, {h, -h}}};
  a.accepting = {0};
  return a;
}

QSqrt2 real_of(const ExactScalar& x) {
  EXPECT_EQ(x.imag(), QSqrt2());
  return x.real();
}

}  // namespace

TEST(qsm_direct_sum, block_structure_and_validity) {
  auto sum = qsm_direct_sum(coin(), stuck());
  EXPECT_EQ(sum.machine.states, 2u);
  EXPECT_FALSE(sum.machine.initial.has_value());
  EXPECT_EQ(sum.machine.transition(0, 0), (ExactMatrix{{ExactScalar::inv_sqrt2(), q(0)}, {q(0), q(1)}}));
  EXPECT_EQ(sum.rho, (ExactMatrix{{q(1), q(0)}}));
  EXPECT_EQ(sum.rho_prime, (ExactMatrix{{q(0), q(1)}}));

  MachineGenerator gen(20);
  for (int k = 0; k < 10; ++k) {
    auto s = qsm_direct_sum(gen.random_qsm(gen.uniform(1, 3)), gen.random_qsm(gen.uniform(1, 3)));
    EXPECT_TRUE(validate(s.machine).empty());
  }
}

TEST(qsm_direct_sum, alphabet_mismatch) {
  auto other = coin();
  other.outputs = {"1", "0"};
  EXPECT_THROW(qsm_direct_sum(coin(), other), std::invalid_argument);
  other = coin();
  other.inputs = {"b"};
  EXPECT_THROW(qsm_equivalence_tree(coin(), other), std::invalid_argument);
  EXPECT_THROW(qsm_equivalence_bilinear(coin(), other), std::invalid_argument);
}

TEST(qsm_equivalence_tree, rejects_invalid_machines) {
  EXPECT_THROW(qsm_equivalence_tree(coin(), one_state_qsm(q(1), q(1))), std::invalid_argument);
}

TEST(qsm_equivalence_tree, one_state_inequivalent_pair) {
  auto v = qsm_equivalence_tree(coin(), stuck());
  EXPECT_FALSE(v.equivalent);
  EXPECT_EQ(v.method, Method::kTree);
  ASSERT_TRUE(std::holds_alternative<InputOutputPair>(v.witness));
  EXPECT_EQ(std::get<InputOutputPair>(v.witness), (InputOutputPair{{0}, {0}}));
  ASSERT_TRUE(v.values);
  EXPECT_EQ((*v.values)[0], q(1, 2));
  EXPECT_EQ((*v.values)[1], q(1));
  EXPECT_EQ(v.witness_length_bound, 4u);
}

TEST(qsm_equivalence_tree, self_equivalence) {
  MachineGenerator gen(21);
  for (int k = 0; k < 15; ++k) {
    auto m = gen.random_qsm(gen.uniform(1, 3));
    auto v = qsm_equivalence_tree(m, m);
    EXPECT_TRUE(v.equivalent);
    EXPECT_TRUE(std::holds_alternative<std::monostate>(v.witness));
    EXPECT_FALSE(v.values);
    EXPECT_LE(v.basis_size, v.basis_size_bound);
  }
}

TEST(bilinearize, one_state_coin) {
  auto b = bilinearize(coin());
  EXPECT_EQ(b.states, 1u);
  EXPECT_EQ(b.alphabet, (Alphabet{"(0|a)", "(1|a)"}));
  EXPECT_EQ(b.initial, (ExactMatrix{{q(1)}}));
  EXPECT_EQ(b.final, (ExactMatrix{{q(1)}}));
  EXPECT_EQ(b.transitions[0], (ExactMatrix{{q(1, 2)}}));
  EXPECT_EQ(b.transitions[1], (ExactMatrix{{q(1, 2)}}));
  EXPECT_EQ(blm_word_value(b, {0, 1}), q(1, 4));
  EXPECT_EQ(blm_word_value(b, {0}), q(1, 2));
}

TEST(bilinearize, value_equals_probability_on_short_pairs) {
  MachineGenerator gen(22);
  for (int k = 0; k < 8; ++k) {
    auto m = gen.random_qsm(2, 2, 2);
    auto b = bilinearize(m);
    EXPECT_EQ(b.states, 4u);
    EXPECT_TRUE(validate(b).empty());
    const std::size_t symbols = b.alphabet.size();
    for (std::size_t len = 0; len <= 3; ++len) {
      std::size_t count = 1;
      for (std::size_t i = 0; i < len; ++i) count *= symbols;
      for (std::size_t code = 0; code < count; ++code) {
        Word w(len);
        InputOutputPair p;
        std::size_t c = code;
        for (std::size_t i = 0; i < len; ++i) {
          w[len - 1 - i] = c % symbols;
          c /= symbols;
        }
        for (std::size_t s : w) {
          p.input.push_back(s / m.outputs.size());
          p.output.push_back(s % m.outputs.size());
        }
        EXPECT_EQ(real_of(blm_word_value(b, w)), qsm_probability(m, p));
      }
    }
  }
}

TEST(blm_equivalence, scalar_machines) {
  EXPECT_TRUE(blm_equivalence(scalar_blm(q(1, 2)), scalar_blm(q(1, 2))).equivalent);
  auto v = blm_equivalence(scalar_blm(q(1, 2)), scalar_blm(q(1, 3)));
  EXPECT_FALSE(v.equivalent);
  EXPECT_EQ(std::get<Word>(v.witness), (Word{0}));
  EXPECT_EQ((*v.values)[0], q(1, 2));
  EXPECT_EQ((*v.values)[1], q(1, 3));
  EXPECT_EQ(v.basis_size_bound, 2u);
  EXPECT_EQ(v.witness_length_bound, 1u);
}

TEST(blm_equivalence, empty_word_difference_is_found_at_root) {
  auto b = scalar_blm(q(1, 2));
  b.initial = ExactMatrix{{q(2)}};
  auto v = blm_equivalence(scalar_blm(q(1, 2)), b);
  EXPECT_FALSE(v.equivalent);
  EXPECT_EQ(std::get<Word>(v.witness), Word{});
}

TEST(blm_equivalence, bilinearized_one_state_pair) {
  auto v = blm_equivalence(bilinearize(coin()), bilinearize(stuck()));
  EXPECT_FALSE(v.equivalent);
  EXPECT_EQ(std::get<Word>(v.witness), (Word{0}));
}

TEST(blm_equivalence, alphabet_mismatch) {
  auto b = scalar_blm(q(1));
  b.alphabet = {"t"};
  EXPECT_THROW(blm_equivalence(scalar_blm(q(1)), b), std::invalid_argument);
}

TEST(qsm_equivalence_bilinear, one_state_pair_matches_tree) {
  auto v = qsm_equivalence_bilinear(coin(), stuck());
  EXPECT_FALSE(v.equivalent);
  EXPECT_EQ(v.method, Method::kBilinear);
  EXPECT_EQ(std::get<InputOutputPair>(v.witness), (InputOutputPair{{0}, {0}}));
  EXPECT_EQ(witness_length(v.witness), 1u);
  EXPECT_LE(witness_length(v.witness), 1u * 1u + 1u * 1u - 1u);
  EXPECT_TRUE(qsm_equivalence_bilinear(coin(), coin()).equivalent);
  EXPECT_TRUE(qsm_equivalence_tree(stuck(), stuck()).equivalent);
}

TEST(qsm_equivalence, permuted_copies_are_equivalent) {
  MachineGenerator gen(23);
  for (int k = 0; k < 15; ++k) {
    auto m = gen.random_qsm(gen.uniform(1, 3));
    auto p = gen.permuted_copy(m);
    EXPECT_TRUE(qsm_equivalence_tree(m, p).equivalent);
    EXPECT_TRUE(qsm_equivalence_bilinear(m, p).equivalent);
  }
}

TEST(qsm_equivalence, methods_agree_with_each_other_and_the_oracle) {
  MachineGenerator gen(24);
  for (int k = 0; k < 40; ++k) {
    auto pair = gen.random_qsm_pair(3);
    auto tree = qsm_equivalence_tree(pair.first, pair.second);
    auto bil = qsm_equivalence_bilinear(pair.first, pair.second);
    auto oracle = brute_force_equivalence(pair.first, pair.second, 4);
    EXPECT_EQ(tree.equivalent, bil.equivalent);
    if (pair.equivalent_by_construction) {
      EXPECT_TRUE(tree.equivalent);
    }
    if (!oracle.equivalent) {
      EXPECT_FALSE(tree.equivalent);
    }
    for (const auto* v : {&tree, &bil}) {
      EXPECT_LE(v->basis_size, v->basis_size_bound);
      if (v->equivalent) continue;
      EXPECT_LE(witness_length(v->witness), v->witness_length_bound);
      const auto& w = std::get<InputOutputPair>(v->witness);
      EXPECT_NE(qsm_probability(pair.first, w), qsm_probability(pair.second, w));
      auto at_w = brute_force_equivalence(pair.first, pair.second, w.input.size());
      EXPECT_FALSE(at_w.equivalent);
    }
  }
}

TEST(qsm_equivalence, deterministic) {
  MachineGenerator a(25), b(25);
  for (int k = 0; k < 10; ++k) {
    auto p1 = a.random_qsm_pair(3);
    auto p2 = b.random_qsm_pair(3);
    auto v1 = qsm_equivalence_tree(p1.first, p1.second);
    auto v2 = qsm_equivalence_tree(p2.first, p2.second);
    EXPECT_EQ(v1.equivalent, v2.equivalent);
    EXPECT_EQ(v1.witness, v2.witness);
    EXPECT_EQ(v1.basis_size, v2.basis_size);
    EXPECT_EQ(v1.nodes_visited, v2.nodes_visited);
  }
}

TEST(qsm_equivalence, float_backend_agrees) {
  MachineGenerator gen(26);
  for (int k = 0; k < 15; ++k) {
    auto pair = gen.random_qsm_pair(3);
    auto exact = qsm_equivalence_tree(pair.first, pair.second);
    auto flt = qsm_equivalence_tree(to_float(pair.first), to_float(pair.second));
    auto flt_bil = qsm_equivalence_bilinear(to_float(pair.first), to_float(pair.second));
    EXPECT_EQ(exact.equivalent, flt.equivalent);
    EXPECT_EQ(exact.equivalent, flt_bil.equivalent);
  }
}

TEST(mo1qfa_equivalence, identity_versus_hadamard) {
  auto v = mo1qfa_equivalence(identity_mo1qfa(), hadamard_mo1qfa());
  EXPECT_FALSE(v.equivalent);
  EXPECT_EQ(std::get<Word>(v.witness), (Word{0}));
  EXPECT_EQ((*v.values)[0], q(1));
  EXPECT_EQ((*v.values)[1], q(1, 2));
  EXPECT_TRUE(mo1qfa_equivalence(hadamard_mo1qfa(), hadamard_mo1qfa()).equivalent);
}

TEST(mo1qfa_equivalence, empty_word_counts) {
  auto a = identity_mo1qfa();
  auto b = identity_mo1qfa();
  b.accepting.clear();
  auto v = mo1qfa_equivalence(a, b);
  EXPECT_FALSE(v.equivalent);
  EXPECT_EQ(std::get<Word>(v.witness), Word{});
}

TEST(mo1qfa_equivalence, agrees_with_oracle_and_visits_projectors) {
  MachineGenerator gen(27);
  for (int k = 0; k < 30; ++k) {
    auto pair = gen.random_mo1qfa_pair(3);
    SearchOptions<ExactScalar> opts;
    bool projectors = true;
    opts.on_node = [&](const ExactMatrix& f) { projectors = projectors && f * f == f && f.adjoint() == f; };
    auto v = mo1qfa_equivalence(pair.first, pair.second, opts);
    auto oracle = brute_force_equivalence(pair.first, pair.second, 4);
    EXPECT_TRUE(projectors);
    EXPECT_LE(v.basis_size, v.basis_size_bound);
    if (pair.equivalent_by_construction) {
      EXPECT_TRUE(v.equivalent);
    }
    if (!oracle.equivalent) {
      EXPECT_FALSE(v.equivalent);
    }
    if (!v.equivalent) {
      const auto& w = std::get<Word>(v.witness);
      EXPECT_LE(w.size(), v.witness_length_bound);
      EXPECT_NE(mo1qfa_probability(pair.first, w), mo1qfa_probability(pair.second, w));
    }
  }
}

TEST(mo1qfa_equivalence, permuted_copies_are_equivalent) {
  MachineGenerator gen(28);
  for (int k = 0; k < 10; ++k) {
    auto a = gen.random_mo1qfa(gen.uniform(1, 3));
    EXPECT_TRUE(mo1qfa_equivalence(a, gen.permuted_copy(a)).equivalent);
  }
}

TEST(brute_force_equivalence, examples) {
  auto v = brute_force_equivalence(coin(), stuck(), 1);
  EXPECT_FALSE(v.equivalent);
  EXPECT_EQ(v.method, Method::kOracle);
  EXPECT_EQ(std::get<InputOutputPair>(v.witness), (InputOutputPair{{0}, {0}}));
  EXPECT_TRUE(brute_force_equivalence(coin(), coin(), 3).equivalent);
  EXPECT_TRUE(brute_force_equivalence(hadamard_mo1qfa(), hadamard_mo1qfa(), 3).equivalent);
  EXPECT_EQ(std::get<Word>(brute_force_equivalence(scalar_blm(q(1, 2)), scalar_blm(q(1, 3)), 2).witness),
            (Word{0}));
}

TEST(brute_force_equivalence, witness_is_shortest) {
  MachineGenerator gen(29);
  for (int k = 0; k < 20; ++k) {
    auto pair = gen.random_qsm_pair(2);
    auto v = brute_force_equivalence(pair.first, pair.second, 3);
    if (v.equivalent) continue;
    std::size_t len = witness_length(v.witness);
    EXPECT_TRUE(len == 1 || brute_force_equivalence(pair.first, pair.second, len - 1).equivalent);
    auto tree = qsm_equivalence_tree(pair.first, pair.second);
    EXPECT_FALSE(tree.equivalent);
    EXPECT_LE(len, witness_length(tree.witness));
  }
}

TEST(brute_force_equivalence, budget_guard) {
  auto m = coin();
  EXPECT_THROW(brute_force_equivalence(m, m, 24), EnumerationBudgetError);
  EXPECT_NO_THROW(brute_force_equivalence(m, m, 10));
  Mo1qfa<ExactScalar> a = MachineGenerator(30).random_mo1qfa(2, 2);
  EXPECT_THROW(brute_force_equivalence(a, a, 30), EnumerationBudgetError);
}
