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

// Machine description documents.
//
// A machine file is a JSON object:
//
//   {
//     "model": "qsm" | "blm" | "pa" | "mo1qfa" | "mm1qfa" | "mog1qfa",
//     "backend": "exact" | "float",           (optional, see default_backend)
//     "states": n,
//     ...model specific fields...
//   }
//
//   qsm:      "initial" (optional; absent means uninitiated), "inputs",
//             "outputs", "transitions": [{"input", "output", "matrix"}]
//   blm, pa:  "alphabet", "initial_vector": [n scalars],
//             "final_vector": [n scalars], "transitions": [{"symbol", "matrix"}]
//   mo1qfa:   "initial", "alphabet", "accepting": [state indices],
//             "transitions": [{"symbol", "matrix"}]
//   mm1qfa:   like mo1qfa plus "rejecting"; "transitions" must also cover "$"
//   mog1qfa:  like mo1qfa; "transitions" must also cover "$"
//
// Matrices are arrays of rows; row k is the image of state k. Scalars are
// strings in the literal syntax of literal.h. The float backend also accepts
// plain JSON numbers.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qfa/machines.h"

namespace qfa {

enum class Model { kQsm, kBlm, kPa, kMo1qfa, kMm1qfa, kMog1qfa };

std::string_view model_name(Model m);
std::optional<Model> parse_model_name(std::string_view name);
std::optional<Backend> parse_backend_name(std::string_view name);

template <Scalar T>
using MachineOf = std::variant<Qsm<T>, Blm<T>, Mo1qfa<T>, Mm1qfa<T>, Mog1qfa<T>>;

using AnyMachine = std::variant<MachineOf<ExactScalar>, MachineOf<FloatScalar>>;

struct MachineDocument {
  Model model = Model::kQsm;
  Backend backend = Backend::kExact;
  AnyMachine machine;
};

/// Malformed document. `where` is "line:column" for syntax errors or a field
/// path such as "transitions[1].matrix[0][2]" for structural ones.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::string where, const std::string& message);
  const std::string& source() const { return source_; }
  const std::string& where() const { return where_; }

 private:
  std::string source_;
  std::string where_;
};

/// Well-formed document whose machine violates a model invariant.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(const std::string& source, std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct ParseOptions {
  /// Used when the document has no "backend" field.
  Backend default_backend = Backend::kExact;
  /// Run validate() and throw ValidationError on violations.
  bool validate = true;
  Tolerance tolerance;
};

MachineDocument parse_machine(std::string_view text, const std::string& source = "<input>",
                              const ParseOptions& opts = {});
MachineDocument load_machine_file(const std::filesystem::path& path, const ParseOptions& opts = {});

/// Exact documents become float; float documents are returned unchanged.
MachineDocument to_float(const MachineDocument& doc);

std::vector<Violation> validate(const MachineDocument& doc, const Tolerance& tol = {});

template <Scalar T>
std::string serialize_machine(const Qsm<T>& m);
template <Scalar T>
std::string serialize_machine(const Blm<T>& m);
template <Scalar T>
std::string serialize_machine(const Mo1qfa<T>& m);
template <Scalar T>
std::string serialize_machine(const Mm1qfa<T>& m);
template <Scalar T>
std::string serialize_machine(const Mog1qfa<T>& m);

std::string serialize_machine(const MachineDocument& doc);

}  // namespace qfa
