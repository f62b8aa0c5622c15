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

#include "qfa/machine_io.h"

#include <gtest/gtest.h>

#include "qfa/equivalence.h"
#include "qfa/mm_analysis.h"
#include "random_machines.h"

using namespace qfa;
using qfa::testing::ExactMatrix;
using qfa::testing::MachineGenerator;

namespace {

constexpr const char* kCoin = R"({
  "model": "qsm",
  "states": 1,
  "initial": 0,
  "inputs": ["a"],
  "outputs": ["0", "1"],
  "transitions": [
    {"input": "a", "output": "0", "matrix": [["0/1 + 1/2 r2"]]},
    {"input": "a", "output": "1", "matrix": [["0/1 + 1/2 r2"]]}
  ]
})";

template <class M>
const M& exact_machine(const MachineDocument& doc) {
  return std::get<M>(std::get<MachineOf<ExactScalar>>(doc.machine));
}

template <class M>
void expect_round_trip(const M& m) {
  MachineDocument doc = parse_machine(serialize_machine(m));
  EXPECT_EQ(exact_machine<M>(doc), m);
  EXPECT_EQ(serialize_machine(doc), serialize_machine(m));
}

}  // namespace

TEST(parse_machine, coin_qsm) {
  MachineDocument doc = parse_machine(kCoin);
  EXPECT_EQ(doc.model, Model::kQsm);
  EXPECT_EQ(doc.backend, Backend::kExact);
  const auto& m = exact_machine<Qsm<ExactScalar>>(doc);
  EXPECT_EQ(m.states, 1u);
  EXPECT_EQ(m.transition(0, 1)(0, 0), ExactScalar::inv_sqrt2());
  EXPECT_EQ(qsm_probability(m, {{0}, {1}}), QSqrt2(make_rational(1, 2)));
}

TEST(parse_machine, literal_grammar_is_enforced) {
  std::string bad = kCoin;
  bad.replace(bad.find("0/1 + 1/2 r2"), 12, "sqrt(2)/2   ");
  try {
    parse_machine(bad, "coin.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.source(), "coin.json");
    EXPECT_EQ(e.where(), "transitions[0].matrix[0][0]");
  }
  std::string number = kCoin;
  for (std::size_t pos; (pos = number.find("\"0/1 + 1/2 r2\"")) != std::string::npos;) {
    number.replace(pos, 14, "0.7071067811865476");
  }
  EXPECT_THROW(parse_machine(number), ParseError);
  ParseOptions as_float;
  as_float.default_backend = Backend::kFloat;
  MachineDocument f = parse_machine(number, "<input>", as_float);
  EXPECT_EQ(f.backend, Backend::kFloat);
  // Exact literals are rounded when a document is read on the float backend.
  EXPECT_EQ(parse_machine(kCoin, "<input>", as_float).backend, Backend::kFloat);
  std::string bare = kCoin;
  bare.replace(bare.find("0/1 + 1/2 r2"), 12, "1           ");
  EXPECT_THROW(parse_machine(bare), ParseError);
}

TEST(parse_machine, overcomplete_machine_names_symbol) {
  std::string text = kCoin;
  for (std::size_t pos; (pos = text.find("0/1 + 1/2 r2")) != std::string::npos;) text.replace(pos, 12, "1/1");
  try {
    parse_machine(text, "bad.json");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_NE(e.violations()[0].location.find("a"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("bad.json"), std::string::npos);
  }
  ParseOptions lenient;
  lenient.validate = false;
  MachineDocument doc = parse_machine(text, "bad.json", lenient);
  EXPECT_FALSE(validate(doc).empty());
}

TEST(parse_machine, syntax_errors_report_line_and_column) {
  try {
    parse_machine("{\n  \"model\": \"qsm\",\n  \"states\": ,\n}", "broken.json");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where().substr(0, 2), "3:");
  }
}

TEST(parse_machine, structural_errors) {
  EXPECT_THROW(parse_machine(R"({"model": "dfa", "states": 1})"), ParseError);
  EXPECT_THROW(parse_machine(R"({"states": 1})"), ParseError);
  EXPECT_THROW(parse_machine(R"([1, 2])"), ParseError);
  std::string missing = kCoin;
  missing.replace(missing.find("\"initial\": 0,"), 13, "\"initial\": 7,");
  EXPECT_THROW(parse_machine(missing), std::runtime_error);
  std::string wrong_shape = kCoin;
  wrong_shape.replace(wrong_shape.find("[[\"0/1 + 1/2 r2\"]]"), 18, "[[\"1\", \"0\"]]     ");
  EXPECT_THROW(parse_machine(wrong_shape), ParseError);
  std::string unknown_symbol = kCoin;
  unknown_symbol.replace(unknown_symbol.find("\"input\": \"a\""), 12, "\"input\": \"b\"");
  EXPECT_THROW(parse_machine(unknown_symbol), ParseError);
}

TEST(parse_machine, mm1qfa_needs_end_marker) {
  std::string text = serialize_machine(counterexample_machine());
  MachineDocument doc = parse_machine(text);
  EXPECT_EQ(doc.model, Model::kMm1qfa);
  std::size_t pos = text.rfind("\"$\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 3, "\"b\"");
  EXPECT_THROW(parse_machine(text), ParseError);
}

TEST(serialize_machine, round_trips_built_in_machines) {
  MachineGenerator gen(50);
  expect_round_trip(counterexample_machine());
  expect_round_trip(counterexample_machine(Completion::kAlternate));
  expect_round_trip(koshiba_construct(counterexample_machine()));
  for (int k = 0; k < 5; ++k) {
    auto m = gen.random_qsm(gen.uniform(1, 3), 2, 2);
    expect_round_trip(m);
    expect_round_trip(bilinearize(m));
    expect_round_trip(gen.random_mo1qfa(gen.uniform(1, 3)));
    expect_round_trip(gen.random_mm1qfa(gen.uniform(2, 4)));
  }
  auto uninitiated = gen.random_qsm(2);
  uninitiated.initial.reset();
  expect_round_trip(uninitiated);
}

TEST(serialize_machine, float_round_trip) {
  MachineGenerator gen(51);
  auto m = to_float(gen.random_qsm(3));
  MachineDocument doc = parse_machine(serialize_machine(m));
  EXPECT_EQ(doc.backend, Backend::kFloat);
  EXPECT_EQ(std::get<Qsm<FloatScalar>>(std::get<MachineOf<FloatScalar>>(doc.machine)), m);
}

TEST(to_float, converts_exact_documents) {
  MachineDocument doc = to_float(parse_machine(kCoin));
  EXPECT_EQ(doc.backend, Backend::kFloat);
  const auto& m = std::get<Qsm<FloatScalar>>(std::get<MachineOf<FloatScalar>>(doc.machine));
  EXPECT_NEAR(qsm_probability(m, {{0}, {0}}), 0.5, 1e-15);
}

TEST(model_names, round_trip) {
  for (Model m : {Model::kQsm, Model::kBlm, Model::kPa, Model::kMo1qfa, Model::kMm1qfa, Model::kMog1qfa}) {
    EXPECT_EQ(parse_model_name(model_name(m)), m);
  }
  EXPECT_FALSE(parse_model_name("nfa"));
  EXPECT_EQ(parse_backend_name("float"), Backend::kFloat);
  EXPECT_FALSE(parse_backend_name("double"));
}

TEST(load_machine_file, missing_file) {
  EXPECT_THROW(load_machine_file("/nonexistent/machine.json"), std::runtime_error);
}
