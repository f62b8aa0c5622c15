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

#include "cli.h"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qfa/equivalence.h"
#include "qfa/literal.h"
#include "qfa/machine_io.h"
#include "qfa/mm_analysis.h"

namespace qfa::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kText, kJson };
enum class MethodChoice { kAuto, kTree, kBilinear, kBoth };

struct Globals {
  std::optional<Backend> backend;
  double epsilon = Tolerance{}.rank_epsilon;
  Format format = Format::kText;

  Tolerance tolerance() const { return Tolerance{epsilon}; }
};

template <class V>
struct ScalarOfMachine;
template <Scalar T>
struct ScalarOfMachine<MachineOf<T>> {
  using type = T;
};
template <class V>
using ScalarOf = typename ScalarOfMachine<std::decay_t<V>>::type;

// ---------------------------------------------------------------------------
// Loading.

MachineDocument load(const std::string& path, const Globals& g) {
  ParseOptions opts;
  opts.tolerance = g.tolerance();
  opts.default_backend = g.backend.value_or(Backend::kExact);
  MachineDocument doc = load_machine_file(path, opts);
  if (g.backend == Backend::kFloat) return to_float(doc);
  if (g.backend == Backend::kExact && doc.backend == Backend::kFloat) {
    throw UsageError(path + ": a float document cannot be checked on the exact backend");
  }
  return doc;
}

/// Brings two documents onto a common backend: exact only when both are exact.
std::pair<MachineDocument, MachineDocument> load_pair(const std::string& p1, const std::string& p2,
                                                      const Globals& g) {
  MachineDocument a = load(p1, g);
  MachineDocument b = load(p2, g);
  if (a.model != b.model && !(a.model == Model::kPa && b.model == Model::kBlm) &&
      !(a.model == Model::kBlm && b.model == Model::kPa)) {
    throw UsageError("cannot compare a " + std::string(model_name(a.model)) + " with a " +
                     std::string(model_name(b.model)));
  }
  if (a.backend != b.backend) {
    if (g.backend) throw UsageError("documents disagree on the backend");
    throw UsageError(p1 + " and " + p2 + " use different backends; pass --backend float to compare them");
  }
  return {std::move(a), std::move(b)};
}

// ---------------------------------------------------------------------------
// Rendering helpers.

template <Scalar T>
std::string exact_text(const T& x) {
  return format_literal(x);
}

template <Scalar T>
std::string decimal_text(const T& x) {
  double re = ScalarTraits<T>::to_double(ScalarTraits<T>::real_part(x));
  std::string out = render_decimal(re);
  double im = 0.0;
  if constexpr (ScalarTraits<T>::is_exact) {
    im = x.imag().to_double();
  } else {
    im = x.imag();
  }
  if (im != 0.0) out += (im < 0 ? " - " : " + ") + render_decimal(std::abs(im)) + " i";
  return out;
}

template <Scalar T>
json value_json(const T& x) {
  return {{"exact", exact_text(x)}, {"decimal", decimal_text(x)}};
}

json real_json(const QSqrt2& x) { return {{"exact", format_literal(x)}, {"decimal", render_decimal(x.to_double())}}; }
json real_json(double x) { return {{"exact", format_literal(x)}, {"decimal", render_decimal(x)}}; }

std::string real_text(const QSqrt2& x) { return format_literal(x) + "  ~ " + render_decimal(x.to_double()); }
std::string real_text(double x) { return render_decimal(x); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::string show_word(const std::vector<std::string>& symbols) {
  return symbols.empty() ? "(empty)" : join(symbols, " ");
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Verdicts.

/// Symbolic names for a witness of the given model.
struct WitnessNames {
  std::vector<std::string> symbols;  // (y|x) symbols or plain word symbols
  std::optional<std::pair<std::vector<std::string>, std::vector<std::string>>> pair;
};

template <Scalar T>
WitnessNames witness_names(const Witness& w, const MachineOf<T>& m) {
  WitnessNames out;
  if (const auto* p = std::get_if<InputOutputPair>(&w)) {
    const auto& q = std::get<Qsm<T>>(m);
    auto in = decode_word(q.inputs, p->input);
    auto o = decode_word(q.outputs, p->output);
    for (std::size_t k = 0; k < in.size(); ++k) out.symbols.push_back("(" + o[k] + "|" + in[k] + ")");
    out.pair = std::make_pair(std::move(in), std::move(o));
  } else if (const auto* word = std::get_if<Word>(&w)) {
    const Alphabet& alphabet = std::visit([](const auto& x) -> const Alphabet& {
      if constexpr (requires { x.alphabet; }) {
        return x.alphabet;
      } else {
        return x.inputs;
      }
    }, m);
    out.symbols = decode_word(alphabet, *word);
  }
  return out;
}

template <Scalar T>
struct Report {
  Verdict<T> verdict;
  double wall_ms = 0.0;
};

template <Scalar T>
json verdict_json(const Report<T>& r, const MachineOf<T>& m, const Globals& g) {
  const Verdict<T>& v = r.verdict;
  json out = {{"method", method_name(v.method)},
              {"equivalent", v.equivalent},
              {"backend", backend_name(ScalarTraits<T>::backend)},
              {"basis_size", v.basis_size},
              {"basis_size_bound", v.basis_size_bound},
              {"nodes_visited", v.nodes_visited},
              {"witness_length_bound", v.witness_length_bound},
              {"wall_time_ms", r.wall_ms}};
  if (!ScalarTraits<T>::is_exact) out["epsilon_rank"] = g.epsilon;
  if (!v.equivalent) {
    WitnessNames names = witness_names<T>(v.witness, m);
    json w = {{"symbols", names.symbols}, {"length", witness_length(v.witness)}};
    if (names.pair) {
      w["input"] = names.pair->first;
      w["output"] = names.pair->second;
    }
    out["witness"] = w;
    out["values"] = json::array({value_json((*v.values)[0]), value_json((*v.values)[1])});
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

template <Scalar T>
void verdict_text(std::ostream& os, const Report<T>& r, const MachineOf<T>& m, const Globals& g) {
  const Verdict<T>& v = r.verdict;
  os << (v.equivalent ? "EQUIVALENT" : "NOT EQUIVALENT");
  if (!ScalarTraits<T>::is_exact) os << " (within eps_rank = " << render_decimal(g.epsilon) << ")";
  os << "  [method: " << method_name(v.method) << ", backend: " << backend_name(ScalarTraits<T>::backend) << "]\n";
  if (!v.equivalent) {
    WitnessNames names = witness_names<T>(v.witness, m);
    os << "  witness: " << show_word(names.symbols) << "\n";
    if (names.pair) {
      os << "  (u, v) = (" << show_word(names.pair->first) << ", " << show_word(names.pair->second) << ")\n";
    }
    os << "  value 1: " << exact_text((*v.values)[0]) << "  ~ " << decimal_text((*v.values)[0]) << "\n";
    os << "  value 2: " << exact_text((*v.values)[1]) << "  ~ " << decimal_text((*v.values)[1]) << "\n";
    os << "  witness length: " << witness_length(v.witness) << " (bound " << v.witness_length_bound << ")\n";
  }
  if (v.method != Method::kOracle) {
    os << "  basis size: " << v.basis_size << " (bound " << v.basis_size_bound << ")\n";
  }
  os << "  nodes visited: " << v.nodes_visited << "\n";
  std::ostringstream t;
  t.setf(std::ios::fixed);
  t.precision(3);
  t << r.wall_ms;
  os << "  wall time: " << t.str() << " ms\n";
}

template <Scalar T>
Report<T> timed(const std::function<Verdict<T>()>& f) {
  auto start = std::chrono::steady_clock::now();
  Verdict<T> v = f();
  return {std::move(v), elapsed_ms(start)};
}

template <Scalar T>
std::vector<Report<T>> run_equivalence(const MachineOf<T>& a, const MachineOf<T>& b, MethodChoice method,
                                       const Globals& g) {
  SearchOptions<T> opts;
  opts.tolerance = g.tolerance();
  return std::visit(
      [&](const auto& m1) -> std::vector<Report<T>> {
        using M = std::decay_t<decltype(m1)>;
        const M* m2 = std::get_if<M>(&b);
        if (!m2) throw UsageError("machines are of different models");
        if constexpr (std::is_same_v<M, Qsm<T>>) {
          auto tree = [&] { return qsm_equivalence_tree(m1, *m2, opts); };
          auto bilinear = [&] { return qsm_equivalence_bilinear(m1, *m2, opts); };
          switch (method) {
            case MethodChoice::kAuto:
            case MethodChoice::kTree:
              return {timed<T>(tree)};
            case MethodChoice::kBilinear:
              return {timed<T>(bilinear)};
            case MethodChoice::kBoth: {
              auto pending = std::async(std::launch::async, [&] { return timed<T>(bilinear); });
              Report<T> first = timed<T>(tree);
              return {std::move(first), pending.get()};
            }
          }
          return {};
        } else if constexpr (std::is_same_v<M, Mo1qfa<T>>) {
          if (method == MethodChoice::kBilinear || method == MethodChoice::kBoth) {
            throw UsageError("measure-once automata support only --method tree");
          }
          return {timed<T>([&] { return mo1qfa_equivalence(m1, *m2, opts); })};
        } else if constexpr (std::is_same_v<M, Blm<T>>) {
          if (method == MethodChoice::kTree || method == MethodChoice::kBoth) {
            throw UsageError("bilinear machines support only --method bilinear");
          }
          return {timed<T>([&] { return blm_equivalence(m1, *m2, opts); })};
        } else {
          throw UsageError("equivalence of measure-many and generalized automata is not supported");
        }
      },
      a);
}

// ---------------------------------------------------------------------------
// Simulation.

template <Scalar T>
json simulate_machine(const MachineOf<T>& machine, const std::string& input, const std::optional<std::string>& output,
                      std::ostream& os, bool text) {
  return std::visit(
      [&](const auto& m) -> json {
        using M = std::decay_t<decltype(m)>;
        json doc = {{"command", "simulate"}, {"backend", backend_name(ScalarTraits<T>::backend)}};
        if constexpr (std::is_same_v<M, Qsm<T>>) {
          if (!output) throw UsageError("QSM simulation needs --output");
          auto in = split_word(input, m.inputs);
          auto out = split_word(*output, m.outputs);
          InputOutputPair p{encode_word(m.inputs, in), encode_word(m.outputs, out)};
          auto prob = qsm_probability(m, p);
          doc["input"] = in;
          doc["output"] = out;
          doc["probability"] = real_json(prob);
          if (text) os << "P(" << show_word(out) << " | " << show_word(in) << ") = " << real_text(prob) << "\n";
        } else {
          if (output) throw UsageError("--output applies only to QSMs");
          auto symbols = split_word(input, m.alphabet);
          Word w = encode_word(m.alphabet, symbols);
          doc["input"] = symbols;
          if constexpr (std::is_same_v<M, Blm<T>>) {
            T f = blm_word_value(m, w);
            doc["value"] = value_json(f);
            if (text) os << "f(" << show_word(symbols) << ") = " << exact_text(f) << "  ~ " << decimal_text(f) << "\n";
          } else if constexpr (std::is_same_v<M, Mo1qfa<T>>) {
            auto p = mo1qfa_probability(m, w);
            doc["accept"] = real_json(p);
            if (text) os << "P_accept(" << show_word(symbols) << ") = " << real_text(p) << "\n";
          } else if constexpr (std::is_same_v<M, Mm1qfa<T>>) {
            auto r = mm1qfa_run(m, w);
            doc["accept"] = real_json(r.accept);
            doc["reject"] = real_json(r.reject);
            doc["residual"] = real_json(r.residual);
            if (text) {
              os << "on " << show_word(symbols) << " $\n";
              os << "  accept:   " << real_text(r.accept) << "\n";
              os << "  reject:   " << real_text(r.reject) << "\n";
              os << "  residual: " << real_text(r.residual) << "\n";
            }
          } else {
            auto p = mog1qfa_value(m, w);
            doc["value"] = real_json(p);
            if (text) os << "value(" << show_word(symbols) << " $) = " << real_text(p) << "\n";
          }
        }
        return doc;
      },
      machine);
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_validate(const std::string& path, const Globals& g, std::ostream& out) {
  ParseOptions opts;
  opts.validate = false;
  opts.tolerance = g.tolerance();
  opts.default_backend = g.backend.value_or(Backend::kExact);
  MachineDocument doc = load_machine_file(path, opts);
  if (g.backend == Backend::kFloat) doc = to_float(doc);
  std::vector<Violation> violations = validate(doc, g.tolerance());
  if (g.format == Format::kJson) {
    json v = json::array();
    for (const auto& x : violations) v.push_back({{"location", x.location}, {"message", x.message}});
    out << json{{"command", "validate"},
                {"file", path},
                {"model", model_name(doc.model)},
                {"backend", backend_name(doc.backend)},
                {"valid", violations.empty()},
                {"violations", v}}
               .dump(2)
        << "\n";
  } else if (violations.empty()) {
    out << path << ": valid " << model_name(doc.model) << " (" << backend_name(doc.backend) << ")\n";
  } else {
    out << path << ": invalid " << model_name(doc.model) << "\n";
    for (const auto& x : violations) out << "  " << x.location << ": " << x.message << "\n";
  }
  return violations.empty() ? kExitEquivalent : kExitError;
}

int cmd_simulate(const std::string& path, const std::string& input, const std::optional<std::string>& output,
                 const Globals& g, std::ostream& out) {
  MachineDocument doc = load(path, g);
  const bool text = g.format == Format::kText;
  json result = std::visit([&](const auto& m) { return simulate_machine(m, input, output, out, text); }, doc.machine);
  if (!text) out << result.dump(2) << "\n";
  return kExitEquivalent;
}

int cmd_equiv(const std::string& p1, const std::string& p2, MethodChoice method, const Globals& g,
              std::ostream& out) {
  auto [a, b] = load_pair(p1, p2, g);
  return std::visit(
      [&](const auto& m1) -> int {
        using MO = std::decay_t<decltype(m1)>;
        const MO& m2 = std::get<MO>(b.machine);
        return [&]<Scalar S>(const MachineOf<S>& x, const MachineOf<S>& y) {
          std::vector<Report<S>> reports = run_equivalence<S>(x, y, method, g);
          if (g.format == Format::kJson) {
            json rs = json::array();
            for (const auto& r : reports) rs.push_back(verdict_json(r, x, g));
            out << json{{"command", "equiv"}, {"files", {p1, p2}}, {"results", rs}}.dump(2) << "\n";
          } else {
            for (const auto& r : reports) verdict_text(out, r, x, g);
          }
          for (std::size_t k = 1; k < reports.size(); ++k) {
            if (reports[k].verdict.equivalent != reports[0].verdict.equivalent) {
              throw std::logic_error("tree and bilinear methods disagree");
            }
          }
          return reports[0].verdict.equivalent ? kExitEquivalent : kExitInequivalent;
        }(m1, m2);
      },
      a.machine);
}

int cmd_bilinearize(const std::string& path, const std::string& target, const Globals& g, std::ostream& out) {
  MachineDocument doc = load(path, g);
  if (doc.model != Model::kQsm) throw UsageError("bilinearize takes a QSM");
  std::string text = std::visit(
      [](const auto& m) -> std::string {
        return serialize_machine(bilinearize(std::get<Qsm<ScalarOf<decltype(m)>>>(m)));
      },
      doc.machine);
  std::ofstream file(target);
  if (!file) throw UsageError("cannot write " + target);
  file << text << "\n";
  if (!file) throw UsageError("failed writing " + target);
  MachineDocument written = parse_machine(text, target);
  std::size_t states = std::visit(
      [](const auto& m) {
        return std::get<Blm<ScalarOf<decltype(m)>>>(m).states;
      },
      written.machine);
  if (g.format == Format::kJson) {
    out << json{{"command", "bilinearize"}, {"input", path}, {"output", target}, {"states", states}}.dump(2) << "\n";
  } else {
    out << "wrote " << states << "-state bilinear machine to " << target << "\n";
  }
  return kExitEquivalent;
}

int cmd_counterexample(const Globals& g, std::ostream& out) {
  CounterexampleReport rep = counterexample_demo();
  out << (g.format == Format::kJson ? render_json(rep) + "\n" : render_text(rep));
  return kExitEquivalent;
}

int cmd_oracle(const std::string& p1, const std::string& p2, std::size_t depth, const Globals& g,
               std::ostream& out) {
  auto [a, b] = load_pair(p1, p2, g);
  return std::visit(
      [&](const auto& m1) -> int {
        using MO = std::decay_t<decltype(m1)>;
        const MO& m2 = std::get<MO>(b.machine);
        return [&]<Scalar S>(const MachineOf<S>& x, const MachineOf<S>& y) {
          Report<S> report = timed<S>([&]() -> Verdict<S> {
            return std::visit(
                [&](const auto& first) -> Verdict<S> {
                  using M = std::decay_t<decltype(first)>;
                  if constexpr (std::is_same_v<M, Qsm<S>> || std::is_same_v<M, Mo1qfa<S>> ||
                                std::is_same_v<M, Blm<S>>) {
                    return brute_force_equivalence(first, std::get<M>(y), depth, g.tolerance());
                  } else {
                    throw UsageError("the oracle supports QSMs, bilinear machines and measure-once automata");
                  }
                },
                x);
          });
          if (g.format == Format::kJson) {
            json r = verdict_json(report, x, g);
            r["depth"] = depth;
            out << json{{"command", "oracle"}, {"files", {p1, p2}}, {"results", json::array({r})}}.dump(2) << "\n";
          } else {
            out << "up to length " << depth << ": ";
            verdict_text(out, report, x, g);
          }
          return report.verdict.equivalent ? kExitEquivalent : kExitInequivalent;
        }(m1, m2);
      },
      a.machine);
}

}  // namespace

std::vector<std::string> split_word(const std::string& text, const std::vector<std::string>& alphabet) {
  std::vector<std::string> out;
  if (text.find_first_of(", \t") != std::string::npos) {
    std::string cur;
    for (char c : text) {
      if (c == ',' || c == ' ' || c == '\t') {
        if (!cur.empty()) out.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
  }
  if (text.empty()) return out;
  bool single_chars = !alphabet.empty();
  for (const auto& s : alphabet) single_chars = single_chars && s.size() == 1;
  if (single_chars) {
    for (char c : text) out.emplace_back(1, c);
  } else {
    out.push_back(text);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivalence checking for quantum sequential machines and quantum finite automata", "qfa-equiv"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "qfa-equiv 0.1.0");

  std::string backend_arg;
  std::string format_arg = "text";
  Globals g;
  if (const char* env = std::getenv(kBackendEnv)) backend_arg = env;
  app.add_option("--backend", backend_arg, "Scalar backend: exact or float (default: $" + std::string(kBackendEnv) +
                                               ", else the document's own)");
  app.add_option("--eps", g.epsilon, "Rank threshold for the float backend")->check(CLI::PositiveNumber);
  app.add_option("--format", format_arg, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string file1, file2, input, target, method_arg = "auto";
  std::optional<std::string> output;
  std::size_t depth = 0;

  auto* validate_cmd = app.add_subcommand("validate", "Check a machine file against its model's invariants");
  validate_cmd->add_option("file", file1)->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "Compute the probability or value of one input");
  simulate_cmd->add_option("file", file1)->required();
  simulate_cmd->add_option("--input", input, "Input word (symbols separated by commas or spaces)")->required();
  simulate_cmd->add_option("--output", output, "Output word, for QSMs");

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide equivalence of two machines");
  equiv_cmd->add_option("file1", file1)->required();
  equiv_cmd->add_option("file2", file2)->required();
  equiv_cmd->add_option("--method", method_arg, "tree, bilinear or both")
      ->check(CLI::IsMember({"auto", "tree", "bilinear", "both"}));

  auto* bilinearize_cmd = app.add_subcommand("bilinearize", "Write the bilinear machine of a QSM");
  bilinearize_cmd->add_option("file", file1)->required();
  bilinearize_cmd->add_option("-o,--out", target, "Destination file")->required();

  auto* counterexample_cmd = app.add_subcommand("counterexample", "Run the measure-many counterexample demo");

  auto* oracle_cmd = app.add_subcommand("oracle", "Compare two machines on every input up to a length");
  oracle_cmd->add_option("file1", file1)->required();
  oracle_cmd->add_option("file2", file2)->required();
  oracle_cmd->add_option("-k,--depth", depth, "Maximum length")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitEquivalent;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitEquivalent;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kExitEquivalent;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (!backend_arg.empty()) {
      g.backend = parse_backend_name(backend_arg);
      if (!g.backend) throw UsageError("unknown backend '" + backend_arg + "'");
    }
    g.format = format_arg == "json" ? Format::kJson : Format::kText;
    MethodChoice method = method_arg == "tree"       ? MethodChoice::kTree
                          : method_arg == "bilinear" ? MethodChoice::kBilinear
                          : method_arg == "both"     ? MethodChoice::kBoth
                                                     : MethodChoice::kAuto;

    if (validate_cmd->parsed()) return cmd_validate(file1, g, out);
    if (simulate_cmd->parsed()) return cmd_simulate(file1, input, output, g, out);
    if (equiv_cmd->parsed()) return cmd_equiv(file1, file2, method, g, out);
    if (bilinearize_cmd->parsed()) return cmd_bilinearize(file1, target, g, out);
    if (counterexample_cmd->parsed()) return cmd_counterexample(g, out);
    if (oracle_cmd->parsed()) return cmd_oracle(file1, file2, depth, g, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto& v : e.violations()) err << "  " << v.location << ": " << v.message << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace qfa::cli
