// Copyright 2026 The Surrogate Compiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "surrogate/bounds.h"
#include "surrogate/emit.h"
#include "surrogate/feasibility.h"
#include "surrogate/formulation.h"
#include "surrogate/ingest.h"
#include "surrogate/milp.h"
#include "surrogate/oracles.h"
#include "surrogate/status.h"

namespace surrogate::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kVerifyTolerance = 1e-7;

struct Options {
  std::string model;
  std::string kind;
  std::size_t partitions = 2;
  double epsilon = 1e-6;
  std::string format;
  std::string out_path;
  std::string sense = "max";
  std::string objective = "y[0]";
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::string input_file;
  std::size_t true_label = 0;
  std::size_t target_label = 1;
  double radius = 0.0;
  std::int64_t node_limit = 0;
  bool json = false;
};

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kModel:
    case ErrorKind::kParse:
      return kExitParse;
    case ErrorKind::kFormulation:
      return kExitFormulation;
    case ErrorKind::kSolver:
      return kExitSolver;
    case ErrorKind::kUsage:
      return kExitUsage;
  }
  return kExitUsage;
}

bool IsPiecewiseLinear(const NetworkDefinition& net) {
  return std::all_of(net.layers.begin(), net.layers.end(), [](const Layer& l) {
    return l.activation == Activation::kRelu ||
           l.activation == Activation::kLinear;
  });
}

FormulationKind ResolveKind(const ParseReport& report, const Options& o) {
  FormulationKind kind;
  kind.partitions = o.partitions;
  if (o.kind.empty()) {
    if (!report.is_network()) {
      kind.type = FormulationType::kGbtBigM;
    } else {
      kind.type = IsPiecewiseLinear(report.network())
                      ? FormulationType::kReluBigM
                      : FormulationType::kFullSpaceSmooth;
    }
    return kind;
  }
  const std::optional<FormulationType> type = ParseFormulationName(o.kind);
  if (!type) throw UsageError("unknown formulation kind '" + o.kind + "'");
  kind.type = *type;
  if (!report.is_network() && kind.type != FormulationType::kGbtBigM) {
    throw FormulationError("tree ensembles only support --kind gbt");
  }
  return kind;
}

OptProblem BuildProblem(const ParseReport& report, const FormulationKind& kind,
                        const Options& o, std::vector<std::string>* warnings) {
  if (report.is_network()) return Formulate(report.network(), kind);
  GbtFormulation f = FormulateGbt(report.ensemble(), GbtOptions{o.epsilon});
  if (warnings) *warnings = f.warnings;
  return std::move(f.problem);
}

ObjectiveSense ParseSense(const std::string& s) {
  return s == "min" ? ObjectiveSense::kMinimize : ObjectiveSense::kMaximize;
}

Json IntervalJson(const Interval& i) { return Json::array({i.lb, i.ub}); }

std::string IntervalText(const Interval& i) {
  return "[" + FormatValue(i.lb) + ", " + FormatValue(i.ub) + "]";
}

void PrintJson(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int CmdInspect(const Options& o, std::ostream& out) {
  const ParseReport report = ReadModelFile(o.model);
  Json j;
  std::ostringstream text;
  if (report.is_network()) {
    const NetworkDefinition& net = report.network();
    j["model"] = "network";
    j["input_size"] = net.input_size;
    j["output_size"] = net.OutputSize();
    j["scaling"] = net.scaling.has_value();
    text << "network: " << net.input_size << " inputs, " << net.OutputSize()
         << " outputs, " << net.layers.size() << " layers"
         << (net.scaling ? ", scaled" : "") << '\n';
    Json layers = Json::array();
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      const Layer& layer = net.layers[l];
      const std::string type = layer.is_dense() ? "dense" : "conv2d";
      const std::string act(ActivationName(layer.activation));
      layers.push_back({{"type", type},
                        {"in", layer.InputSize()},
                        {"out", layer.OutputSize()},
                        {"activation", act}});
      text << "  layer " << l << ": " << type << ' ' << layer.InputSize()
           << " -> " << layer.OutputSize() << ' ' << act << '\n';
    }
    j["layers"] = layers;
  } else {
    const TreeEnsemble& ens = report.ensemble();
    std::size_t splits = 0;
    std::size_t leaves = 0;
    for (const Tree& t : ens.trees) {
      for (const TreeNode& n : t.nodes) {
        std::holds_alternative<TreeSplit>(n) ? ++splits : ++leaves;
      }
    }
    j["model"] = "ensemble";
    j["n_features"] = ens.n_features;
    j["trees"] = ens.trees.size();
    j["splits"] = splits;
    j["leaves"] = leaves;
    j["base_score"] = ens.base_score;
    text << "ensemble: " << ens.n_features << " features, " << ens.trees.size()
         << " trees, " << splits << " splits, " << leaves << " leaves, base "
         << FormatValue(ens.base_score) << '\n';
  }
  j["warnings"] = report.warnings;
  for (const std::string& w : report.warnings) text << "warning: " << w << '\n';
  if (o.json) {
    PrintJson(out, j);
  } else {
    out << text.str();
  }
  return kExitOk;
}

int CmdBounds(const Options& o, std::ostream& out) {
  const ParseReport report = ReadModelFile(o.model);
  if (!report.is_network()) {
    throw UsageError("bounds applies to networks only");
  }
  const IntervalBounds bounds = PropagateBounds(report.network());
  if (o.json) {
    Json j;
    Json input = Json::array();
    for (const Interval& i : bounds.input) input.push_back(IntervalJson(i));
    j["input"] = input;
    Json layers = Json::array();
    for (const LayerBounds& lb : bounds.layers) {
      Json pre = Json::array();
      Json post = Json::array();
      for (const Interval& i : lb.pre) pre.push_back(IntervalJson(i));
      for (const Interval& i : lb.post) post.push_back(IntervalJson(i));
      layers.push_back({{"pre", pre}, {"post", post}});
    }
    j["layers"] = layers;
    Json output = Json::array();
    for (const Interval& i : bounds.output) output.push_back(IntervalJson(i));
    j["output"] = output;
    PrintJson(out, j);
    return kExitOk;
  }
  for (std::size_t i = 0; i < bounds.input.size(); ++i) {
    out << "input " << i << ' ' << IntervalText(bounds.input[i]) << '\n';
  }
  for (std::size_t l = 0; l < bounds.layers.size(); ++l) {
    for (std::size_t i = 0; i < bounds.layers[l].pre.size(); ++i) {
      out << "layer " << l << " neuron " << i << " pre "
          << IntervalText(bounds.layers[l].pre[i]) << " post "
          << IntervalText(bounds.layers[l].post[i]) << '\n';
    }
  }
  for (std::size_t j = 0; j < bounds.output.size(); ++j) {
    out << "output " << j << ' ' << IntervalText(bounds.output[j]) << '\n';
  }
  return kExitOk;
}

int CmdFormulate(const Options& o, std::ostream& out) {
  const ParseReport report = ReadModelFile(o.model);
  const FormulationKind kind = ResolveKind(report, o);
  std::vector<std::string> warnings;
  const OptProblem p = BuildProblem(report, kind, o, &warnings);
  const ConstraintCounts c = CountConstraints(p);
  const std::string name(FormulationName(kind.type));
  if (o.json) {
    Json j{{"formulation", name},
           {"variables", c.variables},
           {"binaries", c.binaries},
           {"linear", c.linear},
           {"linear_eq", c.linear_eq},
           {"linear_le", c.linear_le},
           {"linear_ge", c.linear_ge},
           {"nonlinear", c.nonlinear},
           {"complementarity", c.complementarity},
           {"total_rows", c.total_rows()},
           {"warnings", warnings}};
    if (kind.type == FormulationType::kReluPartition) j["partitions"] = kind.partitions;
    PrintJson(out, j);
    return kExitOk;
  }
  char line[96];
  auto row = [&](const char* label, std::size_t v) {
    std::snprintf(line, sizeof(line), "%-16s %zu\n", label, v);
    out << line;
  };
  out << "formulation      " << name;
  if (kind.type == FormulationType::kReluPartition) {
    out << " (N=" << kind.partitions << ")";
  }
  out << '\n';
  row("variables", c.variables);
  row("binaries", c.binaries);
  row("linear", c.linear);
  row("  equality", c.linear_eq);
  row("  less-equal", c.linear_le);
  row("  greater-equal", c.linear_ge);
  row("nonlinear", c.nonlinear);
  row("complementarity", c.complementarity);
  row("total rows", c.total_rows());
  for (const std::string& w : warnings) out << "warning: " << w << '\n';
  return kExitOk;
}

int CmdEmit(const Options& o, std::ostream& out) {
  const ParseReport report = ReadModelFile(o.model);
  const FormulationKind kind = ResolveKind(report, o);
  const OptProblem p = BuildProblem(report, kind, o, nullptr);
  std::string text;
  if (o.format == "lp") {
    text = EmitLp(p);
  } else if (o.format == "mps") {
    text = EmitMps(p);
  } else {
    text = EmitNlp(p);
  }
  if (o.out_path.empty() || o.out_path == "-") {
    out << text;
    return kExitOk;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + o.out_path + "'");
  file << text;
  file.close();
  if (!file) throw UsageError("cannot write '" + o.out_path + "'");
  if (o.json) {
    PrintJson(out, Json{{"format", o.format},
                        {"path", o.out_path},
                        {"bytes", text.size()}});
  } else {
    out << "wrote " << o.format << " to " << o.out_path << " (" << text.size()
        << " bytes)\n";
  }
  return kExitOk;
}

SolveOptions MakeSolveOptions(const Options& o) {
  SolveOptions options;
  options.node_limit = o.node_limit > 0 ? o.node_limit : NodeLimitFromEnv();
  return options;
}

bool SolverFailed(SolveStatus s) {
  return s == SolveStatus::kNodeLimit || s == SolveStatus::kNumericalFailure;
}

void PrintSolve(const OptProblem& p, const SolveResult& r, const Options& o,
                std::ostream& out) {
  const std::string status(SolveStatusName(r.status));
  const bool has_value = !r.assignment.empty() &&
                         (r.status == SolveStatus::kOptimal ||
                          r.status == SolveStatus::kNodeLimit);
  if (o.json) {
    Json j{{"status", status}};
    j["objective"] = has_value ? Json(r.objective) : Json(nullptr);
    Json assignment = Json::object();
    if (has_value) {
      for (std::size_t k = 0; k < p.num_variables(); ++k) {
        assignment[p.variables()[k].name] = r.assignment[k];
      }
    }
    j["assignment"] = assignment;
    j["stats"] = {{"nodes", r.stats.nodes},
                  {"simplex_iterations", r.stats.simplex_iterations}};
    if (!r.message.empty()) j["message"] = r.message;
    PrintJson(out, j);
    return;
  }
  out << status;
  if (has_value) out << ' ' << FormatValue(r.objective);
  out << '\n';
  out << "nodes " << r.stats.nodes << '\n';
  out << "simplex_iterations " << r.stats.simplex_iterations << '\n';
  if (has_value) {
    for (std::size_t k = 0; k < p.num_variables(); ++k) {
      out << "  " << p.variables()[k].name << " = "
          << FormatValue(r.assignment[k]) << '\n';
    }
  }
}

int CmdSolve(const Options& o, std::ostream& out, std::ostream& err) {
  const ParseReport report = ReadModelFile(o.model);
  const FormulationKind kind = ResolveKind(report, o);
  OptProblem p = BuildProblem(report, kind, o, nullptr);
  p = LinkObjective(std::move(p),
                    ParseObjectiveSpec(o.objective, ParseSense(o.sense)));
  const SolveResult r = Solve(p, MakeSolveOptions(o));
  PrintSolve(p, r, o, out);
  if (SolverFailed(r.status)) {
    err << "error[solver]: " << SolveStatusName(r.status)
        << (r.message.empty() ? "" : ": " + r.message) << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

int CmdVerify(const Options& o, std::ostream& out, std::ostream& err) {
  const ParseReport report = ReadModelFile(o.model);
  const FormulationKind kind = ResolveKind(report, o);
  std::mt19937_64 rng(o.seed);
  double worst = 0.0;
  std::size_t failing = 0;
  std::vector<std::string> first_violations;
  auto sample_box = [&](const std::vector<Interval>& box) {
    std::vector<double> x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
      x[i] = std::uniform_real_distribution<double>(box[i].lb, box[i].ub)(rng);
      x[i] = std::clamp(x[i], box[i].lb, box[i].ub);
    }
    return x;
  };
  auto record = [&](const FeasibilityReport& fr) {
    worst = std::max(worst, fr.max_residual);
    if (!fr.violated.empty()) {
      ++failing;
      if (first_violations.empty()) first_violations = fr.violated;
    }
  };
  if (report.is_network()) {
    const NetworkDefinition& net = report.network();
    RequireFiniteInputBounds(net);
    const OptProblem p = Formulate(net, kind);
    for (std::size_t s = 0; s < o.samples; ++s) {
      const std::vector<double> x = sample_box(net.input_bounds);
      record(CheckFeasibility(p, LiftForwardPass(net, kind, p, x),
                              kVerifyTolerance));
    }
  } else {
    const TreeEnsemble& ens = report.ensemble();
    const GbtFormulation f = FormulateGbt(ens, GbtOptions{o.epsilon});
    for (std::size_t s = 0; s < o.samples; ++s) {
      const std::vector<double> x = sample_box(ens.feature_bounds);
      record(CheckFeasibility(f.problem, LiftGbtPoint(ens, f, x),
                              kVerifyTolerance));
    }
  }
  if (o.json) {
    PrintJson(out, Json{{"formulation", std::string(FormulationName(kind.type))},
                        {"samples", o.samples},
                        {"seed", o.seed},
                        {"max_residual", worst},
                        {"failing_samples", failing},
                        {"violated_rows", first_violations}});
  } else {
    out << "formulation " << FormulationName(kind.type) << '\n'
        << "samples " << o.samples << " seed " << o.seed << '\n'
        << "max_residual " << FormatValue(worst) << '\n'
        << "failing_samples " << failing << '\n';
  }
  if (failing > 0) {
    err << "error[verify]: " << failing << " of " << o.samples
        << " samples exceed residual " << FormatValue(kVerifyTolerance);
    if (!first_violations.empty()) err << " (first: " << first_violations[0] << ")";
    err << '\n';
    return kExitVerifyFailed;
  }
  return kExitOk;
}

std::vector<double> ReadPoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open input point file");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path, e.what());
  }
  if (j.is_object() && j.contains("x")) j = j["x"];
  if (!j.is_array()) throw ParseError(path, "expected an array of numbers");
  std::vector<double> x;
  for (const Json& v : j) {
    if (!v.is_number()) throw ParseError(path, "expected an array of numbers");
    x.push_back(v.get<double>());
  }
  return x;
}

int CmdAdversarial(const Options& o, std::ostream& out, std::ostream& err) {
  const ParseReport report = ReadModelFile(o.model);
  if (!report.is_network()) {
    throw FormulationError("adversarial search needs a network model");
  }
  const NetworkDefinition& net = report.network();
  AdversarialQuery q;
  q.x0 = ReadPoint(o.input_file);
  q.true_label = o.true_label;
  q.target_label = o.target_label;
  q.radius = o.radius;
  const OptProblem p = AdversarialProblem(net, q);
  const SolveResult r = Solve(p, MakeSolveOptions(o));
  if (r.status != SolveStatus::kOptimal) {
    err << "error[solver]: " << SolveStatusName(r.status)
        << (r.message.empty() ? "" : ": " + r.message) << '\n';
    return kExitSolver;
  }
  const bool sat = r.objective > 0.0;
  std::vector<double> x;
  for (VarId v : p.input_vars()) x.push_back(r.assignment[v.value]);
  if (o.json) {
    Json j{{"result", sat ? "SAT" : "UNSAT"}, {"margin", r.objective}};
    if (sat) j["input"] = x;
    j["stats"] = {{"nodes", r.stats.nodes},
                  {"simplex_iterations", r.stats.simplex_iterations}};
    PrintJson(out, j);
    return kExitOk;
  }
  out << (sat ? "SAT" : "UNSAT") << " margin " << FormatValue(r.objective)
      << '\n';
  if (sat) {
    out << "input";
    for (double v : x) out << ' ' << FormatValue(v);
    out << '\n';
  }
  return kExitOk;
}

// "x[3]" -> 3 for prefix "x".
std::optional<std::size_t> IndexedName(const std::string& name,
                                       std::string_view prefix) {
  if (name.size() < prefix.size() + 3 || !name.starts_with(prefix) ||
      name[prefix.size()] != '[' || name.back() != ']') {
    return std::nullopt;
  }
  const std::string digits =
      name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  return std::stoul(digits);
}

int CmdOracle(const Options& o, std::ostream& out) {
  const ParseReport report = ReadModelFile(o.model);
  const ObjectiveSpec spec = ParseObjectiveSpec(o.objective, ParseSense(o.sense));
  OracleResult result;
  if (report.is_network()) {
    const NetworkDefinition& net = report.network();
    OracleObjective objective;
    objective.sense = spec.sense;
    objective.input_weights.assign(net.input_size, 0.0);
    objective.output_weights.assign(net.OutputSize(), 0.0);
    for (const auto& [name, coef] : spec.terms) {
      if (auto i = IndexedName(name, "x"); i && *i < net.input_size) {
        objective.input_weights[*i] += coef;
      } else if (auto j = IndexedName(name, "y"); j && *j < net.OutputSize()) {
        objective.output_weights[*j] += coef;
      } else {
        throw UsageError("objective references '" + name +
                         "', which is not a network input or output");
      }
    }
    result = ReluPatternOracle(net, objective);
  } else {
    if (spec.terms.size() != 1 || spec.terms[0].first != "y[0]" ||
        spec.terms[0].second != 1.0) {
      throw UsageError("the cell oracle supports the objective y[0] only");
    }
    result = GbtCellOracle(report.ensemble(), spec.sense);
  }
  const std::string status(SolveStatusName(result.status));
  const bool has_value = result.status == SolveStatus::kOptimal;
  if (o.json) {
    Json j{{"status", status}};
    j["objective"] = has_value ? Json(result.objective) : Json(nullptr);
    j["x"] = result.x;
    j["enumerated"] = result.enumerated;
    j["feasible"] = result.feasible;
    PrintJson(out, j);
  } else {
    out << status;
    if (has_value) out << ' ' << FormatValue(result.objective);
    out << '\n' << "enumerated " << result.enumerated << '\n';
    if (has_value) {
      out << "x";
      for (double v : result.x) out << ' ' << FormatValue(v);
      out << '\n';
    }
  }
  if (result.status != SolveStatus::kOptimal &&
      result.status != SolveStatus::kInfeasible) {
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace

std::string FormatValue(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0.0";
  // Fewest significant digits that round-trip, then fixed notation for
  // decimal exponents in [-4, 16).
  char buf[48];
  int digits = 1;
  for (; digits < 17; ++digits) {
    std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, value);
  const int exponent = std::atoi(std::strchr(buf, 'e') + 1);
  if (exponent < -4 || exponent >= 16) {
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.*f", std::max(0, digits - 1 - exponent),
                value);
  std::string s = buf;
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app{"Compile surrogate models into optimization problems.",
               "surrogatec"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.add_flag("--json", o.json, "Machine-readable output");
  const std::vector<std::string> kinds = {"fullspace", "reducedspace", "bigm",
                                          "complementarity", "partition", "gbt"};

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("model", o.model, "Model file (network or ensemble JSON)")
        ->required();
    sub->add_flag("--json", o.json, "Machine-readable output");
  };
  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("--kind", o.kind, "Formulation")
        ->check(CLI::IsMember(kinds));
    sub->add_option("--partitions", o.partitions, "Partition classes per neuron")
        ->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", o.epsilon, "GBT right-branch gap")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--node-limit", o.node_limit, "Branch-and-bound node limit")
        ->check(CLI::PositiveNumber);
  };
  auto add_objective = [&](CLI::App* sub) {
    sub->add_option("--sense", o.sense, "max or min")
        ->check(CLI::IsMember({"max", "min"}));
    sub->add_option("--objective", o.objective,
                    "Output/input name or linear combination, e.g. \"y[1] - y[0]\"");
  };

  CLI::App* inspect = app.add_subcommand("inspect", "Summarize a model file");
  add_model(inspect);
  CLI::App* bounds = app.add_subcommand("bounds", "Print interval bounds");
  add_model(bounds);
  CLI::App* formulate = app.add_subcommand("formulate", "Print formulation size");
  add_model(formulate);
  add_kind(formulate);
  CLI::App* emit = app.add_subcommand("emit", "Write an lp, mps or nlp file");
  add_model(emit);
  add_kind(emit);
  emit->add_option("--format", o.format, "lp, mps or nlp")
      ->required()
      ->check(CLI::IsMember({"lp", "mps", "nlp"}));
  emit->add_option("--out", o.out_path, "Output path (default stdout)");
  CLI::App* solve = app.add_subcommand("solve", "Solve with the built-in solver");
  add_model(solve);
  add_kind(solve);
  add_objective(solve);
  add_solver(solve);
  CLI::App* verify = app.add_subcommand("verify", "Forward-pass feasibility check");
  add_model(verify);
  add_kind(verify);
  verify->add_option("--samples", o.samples, "Random inputs to check");
  verify->add_option("--seed", o.seed, "Random seed");
  CLI::App* adversarial =
      app.add_subcommand("adversarial", "Search for an adversarial input");
  add_model(adversarial);
  adversarial->add_option("--input", o.input_file, "JSON array with the point")
      ->required();
  adversarial->add_option("--true", o.true_label, "True label")->required();
  adversarial->add_option("--target", o.target_label, "Target label")->required();
  adversarial->add_option("--radius", o.radius, "l-infinity radius")
      ->required()
      ->check(CLI::NonNegativeNumber);
  add_solver(adversarial);
  CLI::App* oracle = app.add_subcommand("oracle", "Run the brute-force oracle");
  add_model(oracle);
  add_objective(oracle);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (inspect->parsed()) return CmdInspect(o, out);
    if (bounds->parsed()) return CmdBounds(o, out);
    if (formulate->parsed()) return CmdFormulate(o, out);
    if (emit->parsed()) return CmdEmit(o, out);
    if (solve->parsed()) return CmdSolve(o, out, err);
    if (verify->parsed()) return CmdVerify(o, out, err);
    if (adversarial->parsed()) return CmdAdversarial(o, out, err);
    if (oracle->parsed()) return CmdOracle(o, out);
  } catch (const Error& e) {
    err << "error[" << ErrorKindName(e.kind()) << "]: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  }
  err << "error[usage]: no subcommand\n";
  return kExitUsage;
}

}  // namespace surrogate::cli
