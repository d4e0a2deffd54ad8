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

// Solver-agnostic optimization problem: bounded continuous/binary variables,
// linear rows, smooth nonlinear rows, complementarity pairs and an objective.
// Input/output variable lists mark the surrogate's block interface.

#ifndef SURROGATE_PROBLEM_H_
#define SURROGATE_PROBLEM_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "surrogate/expr.h"

namespace surrogate {

enum class VarDomain { kContinuous, kBinary };
enum class RowSense { kLe, kEq, kGe };
enum class ObjectiveSense { kMinimize, kMaximize };

struct Variable {
  std::string name;
  VarDomain domain = VarDomain::kContinuous;
  double lb = 0.0;
  double ub = 0.0;
};

struct LinearTerm {
  VarId var;
  double coef = 0.0;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::kEq;
  double rhs = 0.0;
};

struct NonlinearConstraint {
  std::string name;
  Expr expr;
  RowSense sense = RowSense::kEq;
  double rhs = 0.0;
};

// a >= 0, b >= 0, a * b = 0.
struct ComplementarityPair {
  std::string name;
  Expr a;
  Expr b;
};

struct Objective {
  ObjectiveSense sense = ObjectiveSense::kMinimize;
  Expr expr;  // the constant 0 for a pure feasibility problem
};

// `[A-Za-z][A-Za-z0-9_\[\]]*`, at most 255 characters.
bool IsValidIdentifier(std::string_view name);

// Bracket-free alias: "z[0][1]" -> "z_0_1".
std::string BracketFreeAlias(std::string_view name);

class OptProblem {
 public:
  // All mutators throw UsageError on invalid names, duplicate names,
  // unknown variables or binary bounds outside [0, 1].
  VarId AddVariable(std::string name, VarDomain domain, double lb, double ub);
  void AddLinearConstraint(std::string name, std::vector<LinearTerm> terms,
                           RowSense sense, double rhs);
  void AddNonlinearConstraint(std::string name, Expr expr, RowSense sense,
                              double rhs);
  void AddComplementarity(std::string name, Expr a, Expr b);
  void SetObjective(Objective objective);
  void SetBounds(VarId var, double lb, double ub);
  void MarkInput(VarId var) { inputs_.push_back(var); }
  void MarkOutput(VarId var) { outputs_.push_back(var); }

  const std::vector<Variable>& variables() const { return variables_; }
  const Variable& variable(VarId var) const { return variables_[var.value]; }
  std::size_t num_variables() const { return variables_.size(); }
  const std::vector<LinearConstraint>& linear_constraints() const {
    return linear_;
  }
  const std::vector<NonlinearConstraint>& nonlinear_constraints() const {
    return nonlinear_;
  }
  const std::vector<ComplementarityPair>& complementarity_pairs() const {
    return complementarity_;
  }
  const Objective& objective() const { return objective_; }
  const std::vector<VarId>& input_vars() const { return inputs_; }
  const std::vector<VarId>& output_vars() const { return outputs_; }

  std::optional<VarId> FindVariable(std::string_view name) const;
  // Throws UsageError when absent.
  VarId Var(std::string_view name) const;
  std::optional<std::size_t> FindLinearConstraint(std::string_view name) const;

  // Direct row access for tests that perturb a compiled problem.
  LinearConstraint& mutable_linear_constraint(std::size_t index) {
    return linear_[index];
  }

  bool has_binaries() const;
  bool is_linear() const {
    return nonlinear_.empty() && complementarity_.empty();
  }

 private:
  void ClaimRowName(const std::string& name);
  void CheckExpr(const Expr& expr) const;

  std::vector<Variable> variables_;
  std::unordered_map<std::string, std::size_t> var_index_;
  std::unordered_map<std::string, std::size_t> alias_index_;
  std::unordered_map<std::string, std::size_t> linear_index_;
  std::unordered_map<std::string, bool> row_names_;
  std::vector<LinearConstraint> linear_;
  std::vector<NonlinearConstraint> nonlinear_;
  std::vector<ComplementarityPair> complementarity_;
  Objective objective_;
  std::vector<VarId> inputs_;
  std::vector<VarId> outputs_;
};

struct ConstraintCounts {
  std::size_t variables = 0;
  std::size_t binaries = 0;
  std::size_t linear = 0;
  std::size_t linear_eq = 0;
  std::size_t linear_le = 0;
  std::size_t linear_ge = 0;
  std::size_t nonlinear = 0;
  std::size_t complementarity = 0;

  // Every row of every type; a complementarity pair counts as one.
  std::size_t total_rows() const { return linear + nonlinear + complementarity; }

  bool operator==(const ConstraintCounts&) const = default;
};

ConstraintCounts CountConstraints(const OptProblem& problem);

// Evaluates a linear row's left-hand side.
double RowActivity(const LinearConstraint& row,
                   std::span<const double> assignment);

}  // namespace surrogate

#endif  // SURROGATE_PROBLEM_H_
