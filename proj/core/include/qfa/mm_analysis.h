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

#include <string>
#include <vector>

#include "qfa/machines.h"

namespace qfa {

/// Rewrites a measure-many automaton as a measure-once automaton with
/// non-unitary evolutions, following Koshiba's sink-state construction.
///
/// Accepting states are dropped and replaced by one sink q_sigma per symbol
/// (end-marker included), appended after the surviving states in alphabet
/// order. Under U'_sigma, amplitude that U_sigma sends into any accepting
/// state is summed onto q_sigma; every sink is a fixed point of every U'.
/// The accepting set of the result is the set of sinks.
///
/// Throws std::invalid_argument when the machine has no accepting state or
/// starts in one.
template <Scalar T>
Mog1qfa<T> koshiba_construct(const Mm1qfa<T>& m);

/// Which unitary completion to use for the halting-state rows of the
/// four-state counterexample machine. Measurement discards those rows, so
/// both give identical acceptance behavior.
enum class Completion { kStandard, kAlternate };

/// Four-state machine over {a} with states q0, q1, q_acc, q_rej:
///
///   U_a|q0> = 1/2|q0> + 1/sqrt2|q1> + 1/2|q_acc>
///   U_a|q1> = 1/2|q0> - 1/sqrt2|q1> + 1/2|q_acc>
///   U_$|q0> = |q_acc>,  U_$|q1> = |q_rej>
Mm1qfa<ExactScalar> counterexample_machine(Completion completion = Completion::kStandard);

struct CounterexampleReport {
  Mm1qfa<ExactScalar> original;
  Mog1qfa<ExactScalar> constructed;
  Word word;
  std::vector<MmStep<ExactScalar>> trace;
  QSqrt2 measure_many_accept;
  QSqrt2 constructed_value;
  bool values_differ = false;
  bool constructed_exceeds_one = false;
};

/// Runs both machines on "aa" and records the exact values.
CounterexampleReport counterexample_demo();

std::string render_text(const CounterexampleReport& report);
std::string render_json(const CounterexampleReport& report);

extern template Mog1qfa<ExactScalar> koshiba_construct(const Mm1qfa<ExactScalar>&);
extern template Mog1qfa<FloatScalar> koshiba_construct(const Mm1qfa<FloatScalar>&);

}  // namespace qfa
