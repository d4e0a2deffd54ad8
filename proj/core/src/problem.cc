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

#include "surrogate/problem.h"

#include <cctype>
#include <cmath>
#include <utility>

#include "surrogate/status.h"

namespace surrogate {

bool IsValidIdentifier(std::string_view name) {
  if (name.empty() || name.size() > 255) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    const auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '[' && c != ']') return false;
  }
  return true;
}

std::string BracketFreeAlias(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (c == '[') {
      out.push_back('_');
    } else if (c == ']') {
      // "][" collapses into the single '_' emitted for '['.
      continue;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

VarId OptProblem::AddVariable(std::string name, VarDomain domain, double lb,
                              double ub) {
  if (!IsValidIdentifier(name)) {
    throw UsageError("invalid variable name '" + name + "'");
  }
  if (var_index_.contains(name)) {
    throw UsageError("duplicate variable name '" + name + "'");
  }
  std::string alias = BracketFreeAlias(name);
  if (alias_index_.contains(alias)) {
    throw UsageError("variable '" + name + "' collides with an existing "
                     "name after bracket removal");
  }
  if (std::isnan(lb) || std::isnan(ub) || lb > ub) {
    throw UsageError("variable '" + name + "' has invalid bounds");
  }
  if (domain == VarDomain::kBinary && (lb < 0.0 || ub > 1.0)) {
    throw UsageError("binary variable '" + name + "' must lie within [0, 1]");
  }
  const VarId id{variables_.size()};
  var_index_.emplace(name, id.value);
  alias_index_.emplace(std::move(alias), id.value);
  variables_.push_back({std::move(name), domain, lb, ub});
  return id;
}

void OptProblem::SetBounds(VarId var, double lb, double ub) {
  Variable& v = variables_.at(var.value);
  if (std::isnan(lb) || std::isnan(ub) || lb > ub) {
    throw UsageError("variable '" + v.name + "' has invalid bounds");
  }
  if (v.domain == VarDomain::kBinary && (lb < 0.0 || ub > 1.0)) {
    throw UsageError("binary variable '" + v.name + "' must lie within [0, 1]");
  }
  v.lb = lb;
  v.ub = ub;
}

void OptProblem::ClaimRowName(const std::string& name) {
  if (!IsValidIdentifier(name)) {
    throw UsageError("invalid constraint name '" + name + "'");
  }
  if (name == "obj") throw UsageError("constraint name 'obj' is reserved");
  if (row_names_.contains(name) ||
      row_names_.contains(BracketFreeAlias(name))) {
    throw UsageError("duplicate constraint name '" + name + "'");
  }
  row_names_.emplace(name, true);
  if (const std::string alias = BracketFreeAlias(name); alias != name) {
    row_names_.emplace(alias, true);
  }
}

void OptProblem::CheckExpr(const Expr& expr) const {
  for (VarId v : ReferencedVariables(expr)) {
    if (v.value >= variables_.size()) {
      throw UsageError("expression references unknown variable " +
                       std::to_string(v.value));
    }
  }
}

void OptProblem::AddLinearConstraint(std::string name,
                                     std::vector<LinearTerm> terms,
                                     RowSense sense, double rhs) {
  ClaimRowName(name);
  std::vector<LinearTerm> merged;
  merged.reserve(terms.size());
  for (const LinearTerm& t : terms) {
    if (t.var.value >= variables_.size()) {
      throw UsageError("constraint '" + name + "' references unknown variable");
    }
    bool found = false;
    for (LinearTerm& m : merged) {
      if (m.var == t.var) {
        m.coef += t.coef;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(t);
  }
  std::erase_if(merged, [](const LinearTerm& t) { return t.coef == 0.0; });
  linear_index_.emplace(name, linear_.size());
  linear_.push_back({std::move(name), std::move(merged), sense, rhs});
}

void OptProblem::AddNonlinearConstraint(std::string name, Expr expr,
                                        RowSense sense, double rhs) {
  ClaimRowName(name);
  CheckExpr(expr);
  nonlinear_.push_back({std::move(name), std::move(expr), sense, rhs});
}

void OptProblem::AddComplementarity(std::string name, Expr a, Expr b) {
  ClaimRowName(name);
  CheckExpr(a);
  CheckExpr(b);
  complementarity_.push_back({std::move(name), std::move(a), std::move(b)});
}

void OptProblem::SetObjective(Objective objective) {
  CheckExpr(objective.expr);
  objective_ = std::move(objective);
}

std::optional<VarId> OptProblem::FindVariable(std::string_view name) const {
  const auto it = var_index_.find(std::string(name));
  if (it == var_index_.end()) return std::nullopt;
  return VarId{it->second};
}

VarId OptProblem::Var(std::string_view name) const {
  const auto v = FindVariable(name);
  if (!v) throw UsageError("unknown variable '" + std::string(name) + "'");
  return *v;
}

std::optional<std::size_t> OptProblem::FindLinearConstraint(
    std::string_view name) const {
  const auto it = linear_index_.find(std::string(name));
  if (it == linear_index_.end()) return std::nullopt;
  return it->second;
}

bool OptProblem::has_binaries() const {
  for (const Variable& v : variables_) {
    if (v.domain == VarDomain::kBinary) return true;
  }
  return false;
}

ConstraintCounts CountConstraints(const OptProblem& problem) {
  ConstraintCounts c;
  c.variables = problem.num_variables();
  for (const Variable& v : problem.variables()) {
    if (v.domain == VarDomain::kBinary) ++c.binaries;
  }
  for (const LinearConstraint& row : problem.linear_constraints()) {
    ++c.linear;
    switch (row.sense) {
      case RowSense::kEq:
        ++c.linear_eq;
        break;
      case RowSense::kLe:
        ++c.linear_le;
        break;
      case RowSense::kGe:
        ++c.linear_ge;
        break;
    }
  }
  c.nonlinear = problem.nonlinear_constraints().size();
  c.complementarity = problem.complementarity_pairs().size();
  return c;
}

double RowActivity(const LinearConstraint& row,
                   std::span<const double> assignment) {
  double lhs = 0.0;
  for (const LinearTerm& t : row.terms) lhs += t.coef * assignment[t.var.value];
  return lhs;
}

}  // namespace surrogate
