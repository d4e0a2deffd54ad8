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

#include "surrogate/emit.h"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <vector>

#include "surrogate/status.h"

namespace surrogate {
namespace {

constexpr std::size_t kTermsPerLine = 8;

void RequireLinear(const OptProblem& problem, std::string_view format) {
  if (!problem.nonlinear_constraints().empty() ||
      !problem.complementarity_pairs().empty()) {
    throw FormulationError(std::string(format) +
                           " format cannot carry nonlinear or "
                           "complementarity rows; use the nlp format");
  }
}

LinearForm LinearObjective(const OptProblem& problem, std::string_view format) {
  std::optional<LinearForm> form = AsLinear(problem.objective().expr);
  if (!form) {
    throw FormulationError(std::string(format) +
                           " format needs a linear objective; use the nlp "
                           "format");
  }
  return *form;
}

std::string Alias(const OptProblem& problem, VarId var) {
  return BracketFreeAlias(problem.variable(var).name);
}

std::string_view SenseText(RowSense sense) {
  switch (sense) {
    case RowSense::kLe:
      return "<=";
    case RowSense::kGe:
      return ">=";
    case RowSense::kEq:
      return "=";
  }
  return "=";
}

// " + 2 x" style terms; the first term carries only its own sign.
void AppendLpTerms(std::ostringstream& out,
                   const std::vector<std::pair<VarId, double>>& terms,
                   const OptProblem& problem) {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [var, coef] = terms[k];
    if (k > 0 && k % kTermsPerLine == 0) out << "\n  ";
    if (k == 0) {
      out << ' ' << FormatReal(coef);
    } else {
      out << (coef < 0.0 ? " - " : " + ") << FormatReal(std::abs(coef));
    }
    out << ' ' << Alias(problem, var);
  }
}

std::vector<std::pair<VarId, double>> PairsOf(
    const std::vector<LinearTerm>& terms) {
  std::vector<std::pair<VarId, double>> pairs;
  pairs.reserve(terms.size());
  for (const LinearTerm& t : terms) pairs.emplace_back(t.var, t.coef);
  return pairs;
}

int Precedence(ExprOp op) {
  switch (op) {
    case ExprOp::kAdd:
    case ExprOp::kSub:
      return 1;
    case ExprOp::kMul:
    case ExprOp::kDiv:
      return 2;
    default:
      return 3;
  }
}

std::string_view FunctionName(ExprOp op) {
  switch (op) {
    case ExprOp::kExp:
      return "exp";
    case ExprOp::kLog:
      return "log";
    case ExprOp::kTanh:
      return "tanh";
    case ExprOp::kSigmoid:
      return "sigmoid";
    case ExprOp::kSoftplus:
      return "softplus";
    case ExprOp::kMax:
      return "max";
    default:
      return "";
  }
}

void WriteExpr(std::string& out, const Expr& e, const OptProblem& problem,
               bool top_level);

void WriteOperand(std::string& out, const Expr& e, const OptProblem& problem,
                  bool parens) {
  if (parens) out += '(';
  WriteExpr(out, e, problem, parens);
  if (parens) out += ')';
}

void WriteExpr(std::string& out, const Expr& e, const OptProblem& problem,
               bool top_level) {
  switch (e.op()) {
    case ExprOp::kConstant: {
      const std::string text = FormatReal(e.constant());
      if (text[0] == '-' && !top_level) {
        out += '(' + text + ')';
      } else {
        out += text;
      }
      return;
    }
    case ExprOp::kVariable:
      out += Alias(problem, e.variable());
      return;
    case ExprOp::kAdd:
    case ExprOp::kSub:
    case ExprOp::kMul:
    case ExprOp::kDiv: {
      const int p = Precedence(e.op());
      WriteOperand(out, e.lhs(), problem, Precedence(e.lhs().op()) < p);
      switch (e.op()) {
        case ExprOp::kAdd:
          out += " + ";
          break;
        case ExprOp::kSub:
          out += " - ";
          break;
        case ExprOp::kMul:
          out += '*';
          break;
        default:
          out += '/';
          break;
      }
      const int rp = Precedence(e.rhs().op());
      WriteOperand(out, e.rhs(), problem, rp <= p);
      return;
    }
    case ExprOp::kMax:
      out += "max(";
      WriteExpr(out, e.lhs(), problem, true);
      out += ", ";
      WriteExpr(out, e.rhs(), problem, true);
      out += ')';
      return;
    default:
      out += FunctionName(e.op());
      out += '(';
      WriteExpr(out, e.lhs(), problem, true);
      out += ')';
      return;
  }
}

// "a - 2*b + c" for a linear row.
std::string FormatLinearTerms(const std::vector<LinearTerm>& terms,
                              const OptProblem& problem) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const double c = terms[k].coef;
    const double mag = std::abs(c);
    if (k == 0) {
      if (c < 0.0) out += '-';
    } else {
      out += c < 0.0 ? " - " : " + ";
    }
    if (mag != 1.0) out += FormatReal(mag) + '*';
    out += Alias(problem, terms[k].var);
  }
  return out;
}

std::string MpsLine(std::initializer_list<std::string_view> fields) {
  static constexpr std::size_t kStart[] = {1, 4, 14, 24, 39, 49};
  std::string line;
  std::size_t i = 0;
  for (std::string_view f : fields) {
    const std::size_t start = kStart[i++];
    if (f.empty()) continue;
    if (line.size() < start) {
      line.append(start - line.size(), ' ');
    } else {
      line += ' ';
    }
    line += f;
  }
  return line;
}

}  // namespace

std::string FormatReal(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string FormatExpr(const Expr& expr, const OptProblem& problem) {
  std::string out;
  WriteExpr(out, expr, problem, true);
  return out;
}

std::string EmitLp(const OptProblem& problem) {
  RequireLinear(problem, "lp");
  const LinearForm objective = LinearObjective(problem, "lp");
  std::ostringstream out;
  out << (problem.objective().sense == ObjectiveSense::kMaximize ? "Maximize"
                                                                 : "Minimize")
      << "\n obj:";
  std::vector<std::pair<VarId, double>> obj_terms;
  for (const auto& [var, coef] : objective.terms) {
    if (coef != 0.0) obj_terms.emplace_back(var, coef);
  }
  if (obj_terms.empty() && problem.num_variables() > 0) {
    obj_terms.emplace_back(VarId{0}, 0.0);
  }
  AppendLpTerms(out, obj_terms, problem);
  if (objective.constant != 0.0) {
    out << (objective.constant < 0.0 ? " - " : " + ")
        << FormatReal(std::abs(objective.constant));
  }
  out << "\nSubject To\n";
  for (const LinearConstraint& row : problem.linear_constraints()) {
    out << ' ' << BracketFreeAlias(row.name) << ':';
    std::vector<std::pair<VarId, double>> terms = PairsOf(row.terms);
    if (terms.empty() && problem.num_variables() > 0) {
      terms.emplace_back(VarId{0}, 0.0);
    }
    AppendLpTerms(out, terms, problem);
    out << ' ' << SenseText(row.sense) << ' ' << FormatReal(row.rhs) << '\n';
  }
  out << "Bounds\n";
  bool any_binary = false;
  for (const Variable& v : problem.variables()) {
    const std::string name = BracketFreeAlias(v.name);
    any_binary = any_binary || v.domain == VarDomain::kBinary;
    const bool lb_fin = std::isfinite(v.lb);
    const bool ub_fin = std::isfinite(v.ub);
    if (!lb_fin && !ub_fin) {
      out << ' ' << name << " free\n";
    } else if (v.lb == v.ub) {
      out << ' ' << name << " = " << FormatReal(v.lb) << '\n';
    } else if (!ub_fin) {
      out << ' ' << name << " >= " << FormatReal(v.lb) << '\n';
    } else {
      out << ' ' << FormatReal(v.lb) << " <= " << name
          << " <= " << FormatReal(v.ub) << '\n';
    }
  }
  if (any_binary) {
    out << "Binaries\n";
    for (const Variable& v : problem.variables()) {
      if (v.domain == VarDomain::kBinary) out << ' ' << BracketFreeAlias(v.name) << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

std::string EmitMps(const OptProblem& problem, std::string_view name) {
  RequireLinear(problem, "mps");
  const LinearForm objective = LinearObjective(problem, "mps");
  const std::size_t n = problem.num_variables();
  std::vector<double> obj(n, 0.0);
  for (const auto& [var, coef] : objective.terms) obj[var.value] += coef;

  // Column-major view of the rows.
  std::vector<std::vector<std::pair<std::size_t, double>>> columns(n);
  const auto& rows = problem.linear_constraints();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const LinearTerm& t : rows[r].terms) {
      columns[t.var.value].emplace_back(r, t.coef);
    }
  }
  std::vector<std::string> row_names;
  for (const LinearConstraint& row : rows) {
    row_names.push_back(BracketFreeAlias(row.name));
  }

  std::ostringstream out;
  out << "NAME          " << name << '\n';
  if (problem.objective().sense == ObjectiveSense::kMaximize) {
    out << "OBJSENSE\n" << MpsLine({"", "MAX"}) << '\n';
  }
  out << "ROWS\n" << MpsLine({"N", "obj"}) << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const char* type = rows[r].sense == RowSense::kLe   ? "L"
                       : rows[r].sense == RowSense::kGe ? "G"
                                                        : "E";
    out << MpsLine({type, row_names[r]}) << '\n';
  }
  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  auto marker_line = [&](std::string_view kind) {
    char label[32];
    std::snprintf(label, sizeof(label), "MARKER%d", marker++);
    out << MpsLine({"", label, "'MARKER'", "", kind}) << '\n';
  };
  for (std::size_t j = 0; j < n; ++j) {
    const Variable& v = problem.variables()[j];
    const bool is_int = v.domain == VarDomain::kBinary;
    if (is_int != in_int) {
      marker_line(is_int ? "'INTORG'" : "'INTEND'");
      in_int = is_int;
    }
    const std::string col = BracketFreeAlias(v.name);
    bool wrote = false;
    if (obj[j] != 0.0) {
      out << MpsLine({"", col, "obj", FormatReal(obj[j])}) << '\n';
      wrote = true;
    }
    for (const auto& [r, coef] : columns[j]) {
      out << MpsLine({"", col, row_names[r], FormatReal(coef)}) << '\n';
      wrote = true;
    }
    if (!wrote) out << MpsLine({"", col, "obj", "0"}) << '\n';
  }
  if (in_int) marker_line("'INTEND'");
  out << "RHS\n";
  if (objective.constant != 0.0) {
    out << MpsLine({"", "RHS", "obj", FormatReal(-objective.constant)}) << '\n';
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].rhs != 0.0) {
      out << MpsLine({"", "RHS", row_names[r], FormatReal(rows[r].rhs)}) << '\n';
    }
  }
  out << "BOUNDS\n";
  for (const Variable& v : problem.variables()) {
    const std::string col = BracketFreeAlias(v.name);
    auto bound = [&](std::string_view type, std::optional<double> value) {
      out << MpsLine({type, "BND", col, value ? FormatReal(*value) : ""})
          << '\n';
    };
    if (v.domain == VarDomain::kBinary && v.lb == 0.0 && v.ub == 1.0) {
      bound("BV", std::nullopt);
    } else if (v.lb == v.ub) {
      bound("FX", v.lb);
    } else if (!std::isfinite(v.lb) && !std::isfinite(v.ub)) {
      bound("FR", std::nullopt);
    } else {
      if (std::isfinite(v.lb)) {
        bound("LO", v.lb);
      } else {
        bound("MI", std::nullopt);
      }
      if (std::isfinite(v.ub)) bound("UP", v.ub);
    }
  }
  out << "ENDATA\n";
  return out.str();
}

std::string EmitNlp(const OptProblem& problem) {
  std::ostringstream out;
  out << "\\ surrogate-nlp 1\nvariables:\n";
  for (const Variable& v : problem.variables()) {
    out << "  " << BracketFreeAlias(v.name) << ' '
        << (v.domain == VarDomain::kBinary ? "binary" : "continuous") << ' '
        << FormatReal(v.lb) << ' ' << FormatReal(v.ub) << '\n';
  }
  auto name_list = [&](std::string_view label, const std::vector<VarId>& vars) {
    out << label << ':';
    for (VarId v : vars) out << ' ' << Alias(problem, v);
    out << '\n';
  };
  name_list("inputs", problem.input_vars());
  name_list("outputs", problem.output_vars());
  out << "objective: "
      << (problem.objective().sense == ObjectiveSense::kMaximize ? "maximize "
                                                                 : "minimize ")
      << FormatExpr(problem.objective().expr, problem) << '\n';
  out << "linear constraints:\n";
  for (const LinearConstraint& row : problem.linear_constraints()) {
    out << "  " << BracketFreeAlias(row.name) << ": "
        << FormatLinearTerms(row.terms, problem) << ' ' << SenseText(row.sense)
        << ' ' << FormatReal(row.rhs) << '\n';
  }
  out << "nonlinear constraints:\n";
  for (const NonlinearConstraint& row : problem.nonlinear_constraints()) {
    out << "  " << BracketFreeAlias(row.name) << ": "
        << FormatExpr(row.expr, problem) << ' ' << SenseText(row.sense) << ' '
        << FormatReal(row.rhs) << '\n';
  }
  out << "complementarity:\n";
  for (const ComplementarityPair& pair : problem.complementarity_pairs()) {
    out << "  " << BracketFreeAlias(pair.name) << ": compl("
        << FormatExpr(pair.a, problem) << ", " << FormatExpr(pair.b, problem)
        << ")\n";
  }
  out << "end\n";
  return out.str();
}

}  // namespace surrogate
