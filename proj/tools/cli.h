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

#include <iosfwd>
#include <string>
#include <vector>

namespace qfa::cli {

inline constexpr int kExitEquivalent = 0;
inline constexpr int kExitInequivalent = 1;
inline constexpr int kExitError = 2;

/// Environment variable naming the default scalar backend.
inline constexpr const char* kBackendEnv = "QFA_EQUIV_BACKEND";

/// Runs the command line `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits a word argument into symbols. Commas or whitespace separate
/// symbols when present; otherwise a string over one-character symbols is
/// split per character, and anything else is a single symbol.
std::vector<std::string> split_word(const std::string& text, const std::vector<std::string>& alphabet);

}  // namespace qfa::cli
