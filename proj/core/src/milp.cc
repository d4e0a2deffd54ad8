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

#include "surrogate/milp.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <queue>
#include <string>

#include "surrogate/status.h"

namespace surrogate {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct AffineSide {
  std::vector<std::pair<std::size_t, double>> terms;
  double constant = 0.0;
};

AffineSide ToAffine(const Expr& expr, const std::string& what) {
  const std::optional<LinearForm> form = AsLinear(expr);
  if (!form) throw SolverError(what + " is not linear");
  AffineSide side;
  side.constant = form->constant;
  for (const auto& [var, coef] : form->terms) {
    if (coef != 0.0) side.terms.emplace_back(var.value, coef);
  }
  return side;
}

// The problem lowered to minimization form once; nodes add bound changes and
// complementarity rows on top.
struct BaseModel {
  LinearProgram lp;
  std::vector<std::size_t> binaries;
  std::vector<AffineSide> compl_a;
  std::vector<AffineSide> compl_b;
  bool maximize = false;
};

BaseModel Lower(const OptProblem& problem) {
  if (!problem.nonlinear_constraints().empty()) {
    throw SolverError(
        "the built-in solver handles linear problems only; "
        "emit the nonlinear problem in nlp format instead");
  }
  BaseModel base;
  const std::size_t n = problem.num_variables();
  base.maximize = problem.objective().sense == ObjectiveSense::kMaximize;
  const AffineSide objective = ToAffine(problem.objective().expr, "objective");
  const double sign = base.maximize ? -1.0 : 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Variable& v = problem.variables()[j];
    base.lp.AddVar(0.0, v.lb, v.ub);
    if (v.domain == VarDomain::kBinary) base.binaries.push_back(j);
  }
  for (const auto& [j, coef] : objective.terms) base.lp.cost[j] += sign * coef;
  base.lp.cost_offset = sign * objective.constant;
  for (const LinearConstraint& row : problem.linear_constraints()) {
    LpRow lp_row;
    lp_row.sense = row.sense;
    lp_row.rhs = row.rhs;
    for (const LinearTerm& t : row.terms) {
      lp_row.terms.emplace_back(t.var.value, t.coef);
    }
    base.lp.rows.push_back(std::move(lp_row));
  }
  for (const ComplementarityPair& pair : problem.complementarity_pairs()) {
    base.compl_a.push_back(ToAffine(pair.a, "complementarity side " + pair.name));
    base.compl_b.push_back(ToAffine(pair.b, "complementarity side " + pair.name));
    for (const AffineSide* side : {&base.compl_a.back(), &base.compl_b.back()}) {
      base.lp.rows.push_back({side->terms, RowSense::kGe, -side->constant});
    }
  }
  return base;
}

double EvalSide(const AffineSide& side, const std::vector<double>& x) {
  double v = side.constant;
  for (const auto& [j, coef] : side.terms) v += coef * x[j];
  return v;
}

struct Node {
  double bound = -kInf;
  std::int64_t id = 0;
  std::vector<double> lb;
  std::vector<double> ub;
  // Per complementarity pair: 0 free, 1 side a fixed to 0, 2 side b fixed to 0.
  std::vector<std::uint8_t> compl_fix;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

double PruneSlack(double incumbent) {
  return 1e-9 * std::max(1.0, std::abs(incumbent));
}

SolveResult Report(const BaseModel& base,
                   SolveResult result, double internal_objective,
                   std::vector<double> x) {
  result.objective = base.maximize ? -internal_objective : internal_objective;
  if (result.objective == 0.0) result.objective = 0.0;
  result.assignment = std::move(x);
  return result;
}

}  // namespace

std::int64_t NodeLimitFromEnv(std::int64_t fallback) {
  const char* text = std::getenv("SURROGATE_COMPILER_NODE_LIMIT");
  if (text == nullptr || *text == '\0') return fallback;
  errno = 0;
  char* end = nullptr;
  const long long value = std::strtoll(text, &end, 10);
  if (errno != 0 || *end != '\0' || value <= 0) {
    throw UsageError(std::string("SURROGATE_COMPILER_NODE_LIMIT must be a "
                                 "positive integer, got '") +
                     text + "'");
  }
  return value;
}

SolveResult SolveLp(const OptProblem& problem, const SolveOptions& options) {
  if (problem.has_binaries() || !problem.complementarity_pairs().empty()) {
    throw SolverError("problem has discrete structure; use the MILP solver");
  }
  const BaseModel base = Lower(problem);
  const LpResult lp = SolveLinearProgram(base.lp, options.simplex);
  SolveResult result;
  result.status = lp.status;
  result.message = lp.message;
  result.stats.simplex_iterations = lp.iterations;
  result.stats.nodes = 1;
  if (lp.status != SolveStatus::kOptimal) {
    result.assignment = lp.x;
    return result;
  }
  result.row_duals = lp.row_duals;
  result.reduced_costs = lp.reduced_costs;
  result.stats.incumbent_trace.push_back(lp.objective);
  return Report(base, std::move(result), lp.objective, lp.x);
}

SolveResult SolveMilp(const OptProblem& problem, const SolveOptions& options) {
  const BaseModel base = Lower(problem);
  const std::size_t pairs = base.compl_a.size();

  SolveResult result;
  double incumbent = kInf;
  std::vector<double> best_x;
  std::int64_t next_id = 0;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  Node root;
  root.id = next_id++;
  root.lb = base.lp.lb;
  root.ub = base.lp.ub;
  root.compl_fix.assign(pairs, 0);
  open.push(std::move(root));

  bool hit_limit = false;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - PruneSlack(incumbent)) continue;
    if (result.stats.nodes >= options.node_limit) {
      hit_limit = true;
      break;
    }
    ++result.stats.nodes;

    LinearProgram lp = base.lp;
    lp.lb = node.lb;
    lp.ub = node.ub;
    for (std::size_t p = 0; p < pairs; ++p) {
      if (node.compl_fix[p] == 0) continue;
      const AffineSide& side = node.compl_fix[p] == 1 ? base.compl_a[p]
                                                      : base.compl_b[p];
      lp.rows.push_back({side.terms, RowSense::kEq, -side.constant});
    }
    const LpResult relax = SolveLinearProgram(lp, options.simplex);
    result.stats.simplex_iterations += relax.iterations;
    if (relax.status == SolveStatus::kInfeasible) continue;
    if (relax.status == SolveStatus::kUnbounded) {
      result.status = SolveStatus::kUnbounded;
      result.message = "relaxation unbounded at node " +
                       std::to_string(result.stats.nodes);
      return result;
    }
    if (relax.status != SolveStatus::kOptimal) {
      result.status = SolveStatus::kNumericalFailure;
      result.message = "node " + std::to_string(result.stats.nodes) + ": " +
                       relax.message;
      return result;
    }
    const double value = relax.objective;
    if (value >= incumbent - PruneSlack(incumbent)) continue;

    // Most fractional binary, lowest index on ties.
    std::optional<std::size_t> branch_var;
    double best_frac = options.integrality_tolerance;
    for (std::size_t j : base.binaries) {
      const double v = relax.x[j];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac > best_frac) {
        best_frac = frac;
        branch_var = j;
      }
    }
    if (branch_var) {
      for (double fix : {0.0, 1.0}) {
        Node child;
        child.bound = value;
        child.id = next_id++;
        child.lb = node.lb;
        child.ub = node.ub;
        child.lb[*branch_var] = fix;
        child.ub[*branch_var] = fix;
        child.compl_fix = node.compl_fix;
        open.push(std::move(child));
      }
      continue;
    }
    std::optional<std::size_t> branch_pair;
    double worst = options.complementarity_tolerance;
    for (std::size_t p = 0; p < pairs; ++p) {
      if (node.compl_fix[p] != 0) continue;
      const double viol = std::min(EvalSide(base.compl_a[p], relax.x),
                                   EvalSide(base.compl_b[p], relax.x));
      if (viol > worst) {
        worst = viol;
        branch_pair = p;
      }
    }
    if (branch_pair) {
      for (std::uint8_t side : {std::uint8_t{1}, std::uint8_t{2}}) {
        Node child;
        child.bound = value;
        child.id = next_id++;
        child.lb = node.lb;
        child.ub = node.ub;
        child.compl_fix = node.compl_fix;
        child.compl_fix[*branch_pair] = side;
        open.push(std::move(child));
      }
      continue;
    }
    incumbent = value;
    best_x = relax.x;
    result.stats.incumbent_trace.push_back(value);
  }

  if (hit_limit) {
    result.status = SolveStatus::kNodeLimit;
    result.message = "node limit " + std::to_string(options.node_limit) +
                     " reached";
    if (!best_x.empty()) {
      return Report(base, std::move(result), incumbent,
                    std::move(best_x));
    }
    return result;
  }
  if (best_x.empty()) {
    result.status = SolveStatus::kInfeasible;
    return result;
  }
  result.status = SolveStatus::kOptimal;
  return Report(base, std::move(result), incumbent, std::move(best_x));
}

SolveResult Solve(const OptProblem& problem, const SolveOptions& options) {
  if (problem.has_binaries() || !problem.complementarity_pairs().empty()) {
    return SolveMilp(problem, options);
  }
  return SolveLp(problem, options);
}

}  // namespace surrogate
