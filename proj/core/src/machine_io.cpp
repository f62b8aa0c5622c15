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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qfa/literal.h"

namespace qfa {

using nlohmann::json;

namespace {

std::string summarize(const std::vector<Violation>& vs) {
  std::string msg;
  for (const auto& v : vs) msg += "\n  " + v.location + ": " + v.message;
  return msg;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

// Walks a JSON document, keeping the field path for diagnostics.
class Reader {
 public:
  Reader(const json& doc, std::string source) : doc_(doc), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ParseError(source_, path.empty() ? "<root>" : path, msg);
  }

  const json& field(const json& obj, const std::string& path, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
    return *it;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  std::size_t index(const json& v, const std::string& path) const {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  std::size_t index_field(const json& obj, const std::string& path, const char* key) const {
    return index(field(obj, path, key), join(path, key));
  }

  std::vector<std::size_t> index_list(const json& obj, const std::string& path, const char* key) const {
    const json& arr = field(obj, path, key);
    std::string p = join(path, key);
    if (!arr.is_array()) fail(p, "expected an array of state indices");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(index(arr[k], p + "[" + std::to_string(k) + "]"));
    return out;
  }

  std::string string_value(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  Alphabet alphabet(const json& obj, const std::string& path, const char* key) const {
    const json& arr = field(obj, path, key);
    std::string p = join(path, key);
    if (!arr.is_array()) fail(p, "expected an array of symbols");
    Alphabet out;
    for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(string_value(arr[k], p + "[" + std::to_string(k) + "]"));
    return out;
  }

  template <Scalar T>
  T scalar(const json& v, const std::string& path) const {
    try {
      if (v.is_string()) return parse_literal<T>(v.get<std::string>());
      if constexpr (!ScalarTraits<T>::is_exact) {
        if (v.is_number()) return T(v.get<double>(), 0.0);
      }
    } catch (const LiteralError& e) {
      if constexpr (!ScalarTraits<T>::is_exact) {
        // Exact literals are accepted and rounded on the float backend.
        try {
          ExactScalar x = parse_exact_literal(v.get<std::string>());
          return T(x.real().to_double(), x.imag().to_double());
        } catch (const LiteralError&) {
        }
      }
      fail(path, e.what());
    }
    fail(path, ScalarTraits<T>::is_exact ? "exact scalars must be string literals such as \"1/2 + 0/1 r2\""
                                         : "expected a scalar literal or number");
  }

  template <Scalar T>
  Matrix<T> matrix(const json& v, const std::string& path, std::size_t n) const {
    if (!v.is_array() || v.size() != n) fail(path, "expected " + std::to_string(n) + " rows");
    Matrix<T> m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      std::string rp = path + "[" + std::to_string(r) + "]";
      const json& row = v[r];
      if (!row.is_array() || row.size() != n) fail(rp, "expected " + std::to_string(n) + " entries");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = scalar<T>(row[c], rp + "[" + std::to_string(c) + "]");
    }
    return m;
  }

  template <Scalar T>
  Matrix<T> vector_field(const json& obj, const std::string& path, const char* key, std::size_t n, bool column) const {
    const json& arr = field(obj, path, key);
    std::string p = join(path, key);
    if (!arr.is_array() || arr.size() != n) fail(p, "expected " + std::to_string(n) + " entries");
    Matrix<T> m = column ? Matrix<T>(n, 1) : Matrix<T>(1, n);
    for (std::size_t k = 0; k < n; ++k) {
      T x = scalar<T>(arr[k], p + "[" + std::to_string(k) + "]");
      if (column) {
        m(k, 0) = std::move(x);
      } else {
        m(0, k) = std::move(x);
      }
    }
    return m;
  }

  // Reads {"symbol", "matrix"} entries into one slot per symbol of `symbols`.
  template <Scalar T>
  std::vector<Matrix<T>> symbol_transitions(const json& obj, const Alphabet& symbols, std::size_t n) const {
    const json& arr = field(obj, "", "transitions");
    if (!arr.is_array()) fail("transitions", "expected an array");
    std::vector<std::optional<Matrix<T>>> slots(symbols.size());
    for (std::size_t k = 0; k < arr.size(); ++k) {
      std::string p = "transitions[" + std::to_string(k) + "]";
      std::string sym = string_value(field(arr[k], p, "symbol"), p + ".symbol");
      auto it = std::find(symbols.begin(), symbols.end(), sym);
      if (it == symbols.end()) fail(p + ".symbol", "unknown symbol '" + sym + "'");
      auto slot = static_cast<std::size_t>(it - symbols.begin());
      if (slots[slot]) fail(p + ".symbol", "duplicate matrix for symbol '" + sym + "'");
      slots[slot] = matrix<T>(field(arr[k], p, "matrix"), p + ".matrix", n);
    }
    std::vector<Matrix<T>> out;
    for (std::size_t s = 0; s < symbols.size(); ++s) {
      if (!slots[s]) fail("transitions", "no matrix for symbol '" + symbols[s] + "'");
      out.push_back(std::move(*slots[s]));
    }
    return out;
  }

  template <Scalar T>
  MachineOf<T> read(Model model) const {
    std::size_t n = index_field(doc_, "", "states");
    switch (model) {
      case Model::kQsm: {
        Qsm<T> m;
        m.states = n;
        if (doc_.contains("initial")) m.initial = index_field(doc_, "", "initial");
        m.inputs = alphabet(doc_, "", "inputs");
        m.outputs = alphabet(doc_, "", "outputs");
        const json& arr = field(doc_, "", "transitions");
        if (!arr.is_array()) fail("transitions", "expected an array");
        std::vector<std::optional<Matrix<T>>> slots(m.inputs.size() * m.outputs.size());
        for (std::size_t k = 0; k < arr.size(); ++k) {
          std::string p = "transitions[" + std::to_string(k) + "]";
          std::string x = string_value(field(arr[k], p, "input"), p + ".input");
          std::string y = string_value(field(arr[k], p, "output"), p + ".output");
          auto xi = std::find(m.inputs.begin(), m.inputs.end(), x);
          auto yi = std::find(m.outputs.begin(), m.outputs.end(), y);
          if (xi == m.inputs.end()) fail(p + ".input", "unknown input symbol '" + x + "'");
          if (yi == m.outputs.end()) fail(p + ".output", "unknown output symbol '" + y + "'");
          std::size_t slot = m.pair_index(static_cast<std::size_t>(xi - m.inputs.begin()),
                                          static_cast<std::size_t>(yi - m.outputs.begin()));
          if (slots[slot]) fail(p, "duplicate matrix for (" + y + "|" + x + ")");
          slots[slot] = matrix<T>(field(arr[k], p, "matrix"), p + ".matrix", n);
        }
        for (std::size_t x = 0; x < m.inputs.size(); ++x) {
          for (std::size_t y = 0; y < m.outputs.size(); ++y) {
            auto& slot = slots[m.pair_index(x, y)];
            if (!slot) fail("transitions", "no matrix for (" + m.outputs[y] + "|" + m.inputs[x] + ")");
            m.transitions.push_back(std::move(*slot));
          }
        }
        return m;
      }
      case Model::kBlm:
      case Model::kPa: {
        Blm<T> m;
        m.states = n;
        m.stochastic = model == Model::kPa;
        m.alphabet = alphabet(doc_, "", "alphabet");
        m.initial = vector_field<T>(doc_, "", "initial_vector", n, false);
        m.final = vector_field<T>(doc_, "", "final_vector", n, true);
        m.transitions = symbol_transitions<T>(doc_, m.alphabet, n);
        return m;
      }
      case Model::kMo1qfa: {
        Mo1qfa<T> m;
        m.states = n;
        m.initial = index_field(doc_, "", "initial");
        m.alphabet = alphabet(doc_, "", "alphabet");
        m.accepting = index_list(doc_, "", "accepting");
        m.transitions = symbol_transitions<T>(doc_, m.alphabet, n);
        return m;
      }
      case Model::kMm1qfa: {
        Mm1qfa<T> m;
        m.states = n;
        m.initial = index_field(doc_, "", "initial");
        m.alphabet = alphabet(doc_, "", "alphabet");
        m.accepting = index_list(doc_, "", "accepting");
        m.rejecting = index_list(doc_, "", "rejecting");
        Alphabet with_end = m.alphabet;
        with_end.emplace_back(kEndMarker);
        m.transitions = symbol_transitions<T>(doc_, with_end, n);
        return m;
      }
      case Model::kMog1qfa: {
        Mog1qfa<T> m;
        m.states = n;
        m.initial = index_field(doc_, "", "initial");
        m.alphabet = alphabet(doc_, "", "alphabet");
        m.accepting = index_list(doc_, "", "accepting");
        Alphabet with_end = m.alphabet;
        with_end.emplace_back(kEndMarker);
        m.transitions = symbol_transitions<T>(doc_, with_end, n);
        return m;
      }
    }
    fail("model", "unsupported model");
  }

 private:
  const json& doc_;
  std::string source_;
};

template <Scalar T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_literal(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <Scalar T>
json flat_json(const Matrix<T>& m) {
  json out = json::array();
  for (const auto& x : m.data()) out.push_back(format_literal(x));
  return out;
}

template <Scalar T>
json header(Model model, std::size_t states) {
  return json{{"model", model_name(model)}, {"backend", backend_name(ScalarTraits<T>::backend)}, {"states", states}};
}

template <Scalar T>
json symbol_transitions_json(const Alphabet& alphabet, const std::vector<Matrix<T>>& ms) {
  json arr = json::array();
  for (std::size_t s = 0; s < ms.size(); ++s) {
    std::string sym = s < alphabet.size() ? alphabet[s] : std::string(kEndMarker);
    arr.push_back({{"symbol", sym}, {"matrix", matrix_json(ms[s])}});
  }
  return arr;
}

}  // namespace

ParseError::ParseError(std::string source, std::string where, const std::string& message)
    : std::runtime_error(source + ":" + where + ": " + message), source_(std::move(source)), where_(std::move(where)) {}

ValidationError::ValidationError(const std::string& source, std::vector<Violation> violations)
    : std::runtime_error(source + ": machine is invalid:" + summarize(violations)), violations_(std::move(violations)) {}

std::string_view model_name(Model m) {
  switch (m) {
    case Model::kQsm:
      return "qsm";
    case Model::kBlm:
      return "blm";
    case Model::kPa:
      return "pa";
    case Model::kMo1qfa:
      return "mo1qfa";
    case Model::kMm1qfa:
      return "mm1qfa";
    case Model::kMog1qfa:
      return "mog1qfa";
  }
  return "unknown";
}

std::optional<Model> parse_model_name(std::string_view name) {
  for (Model m : {Model::kQsm, Model::kBlm, Model::kPa, Model::kMo1qfa, Model::kMm1qfa, Model::kMog1qfa}) {
    if (model_name(m) == name) return m;
  }
  return std::nullopt;
}

std::optional<Backend> parse_backend_name(std::string_view name) {
  if (name == "exact") return Backend::kExact;
  if (name == "float") return Backend::kFloat;
  return std::nullopt;
}

MachineDocument parse_machine(std::string_view text, const std::string& source, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, line_column(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object()) throw ParseError(source, "<root>", "expected a JSON object");
  Reader reader(doc, source);

  MachineDocument out;
  std::string model = reader.string_value(reader.field(doc, "", "model"), "model");
  auto parsed_model = parse_model_name(model);
  if (!parsed_model) reader.fail("model", "unknown model tag '" + model + "'");
  out.model = *parsed_model;

  out.backend = opts.default_backend;
  if (doc.contains("backend")) {
    std::string b = reader.string_value(doc["backend"], "backend");
    auto parsed = parse_backend_name(b);
    if (!parsed) reader.fail("backend", "unknown backend '" + b + "'");
    out.backend = *parsed;
  }

  if (out.backend == Backend::kExact) {
    out.machine = reader.read<ExactScalar>(out.model);
  } else {
    out.machine = reader.read<FloatScalar>(out.model);
  }

  if (opts.validate) {
    auto violations = validate(out, opts.tolerance);
    if (!violations.empty()) throw ValidationError(source, std::move(violations));
  }
  return out;
}

MachineDocument load_machine_file(const std::filesystem::path& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "<file>", "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_machine(buf.str(), path.string(), opts);
}

MachineDocument to_float(const MachineDocument& doc) {
  if (doc.backend == Backend::kFloat) return doc;
  MachineDocument out;
  out.model = doc.model;
  out.backend = Backend::kFloat;
  out.machine = std::visit([](const auto& m) -> MachineOf<FloatScalar> { return qfa::to_float(m); },
                           std::get<MachineOf<ExactScalar>>(doc.machine));
  return out;
}

std::vector<Violation> validate(const MachineDocument& doc, const Tolerance& tol) {
  return std::visit(
      [&](const auto& inner) { return std::visit([&](const auto& m) { return validate(m, tol); }, inner); },
      doc.machine);
}

template <Scalar T>
std::string serialize_machine(const Qsm<T>& m) {
  json doc = header<T>(Model::kQsm, m.states);
  if (m.initial) doc["initial"] = *m.initial;
  doc["inputs"] = m.inputs;
  doc["outputs"] = m.outputs;
  json arr = json::array();
  for (std::size_t x = 0; x < m.inputs.size(); ++x) {
    for (std::size_t y = 0; y < m.outputs.size(); ++y) {
      arr.push_back({{"input", m.inputs[x]}, {"output", m.outputs[y]}, {"matrix", matrix_json(m.transition(x, y))}});
    }
  }
  doc["transitions"] = std::move(arr);
  return doc.dump(2) + "\n";
}

template <Scalar T>
std::string serialize_machine(const Blm<T>& m) {
  json doc = header<T>(m.stochastic ? Model::kPa : Model::kBlm, m.states);
  doc["alphabet"] = m.alphabet;
  doc["initial_vector"] = flat_json(m.initial);
  doc["final_vector"] = flat_json(m.final);
  doc["transitions"] = symbol_transitions_json(m.alphabet, m.transitions);
  return doc.dump(2) + "\n";
}

template <Scalar T>
std::string serialize_machine(const Mo1qfa<T>& m) {
  json doc = header<T>(Model::kMo1qfa, m.states);
  doc["initial"] = m.initial;
  doc["alphabet"] = m.alphabet;
  doc["accepting"] = m.accepting;
  doc["transitions"] = symbol_transitions_json(m.alphabet, m.transitions);
  return doc.dump(2) + "\n";
}

template <Scalar T>
std::string serialize_machine(const Mm1qfa<T>& m) {
  json doc = header<T>(Model::kMm1qfa, m.states);
  doc["initial"] = m.initial;
  doc["alphabet"] = m.alphabet;
  doc["accepting"] = m.accepting;
  doc["rejecting"] = m.rejecting;
  doc["transitions"] = symbol_transitions_json(m.alphabet, m.transitions);
  return doc.dump(2) + "\n";
}

template <Scalar T>
std::string serialize_machine(const Mog1qfa<T>& m) {
  json doc = header<T>(Model::kMog1qfa, m.states);
  doc["initial"] = m.initial;
  doc["alphabet"] = m.alphabet;
  doc["accepting"] = m.accepting;
  doc["transitions"] = symbol_transitions_json(m.alphabet, m.transitions);
  return doc.dump(2) + "\n";
}

std::string serialize_machine(const MachineDocument& doc) {
  return std::visit(
      [](const auto& inner) { return std::visit([](const auto& m) { return serialize_machine(m); }, inner); },
      doc.machine);
}

#define QFA_INSTANTIATE_IO(T)                                \
  template std::string serialize_machine(const Qsm<T>&);     \
  template std::string serialize_machine(const Blm<T>&);     \
  template std::string serialize_machine(const Mo1qfa<T>&);  \
  template std::string serialize_machine(const Mm1qfa<T>&);  \
  template std::string serialize_machine(const Mog1qfa<T>&);

QFA_INSTANTIATE_IO(ExactScalar)
QFA_INSTANTIATE_IO(FloatScalar)
#undef QFA_INSTANTIATE_IO

}  // namespace qfa
