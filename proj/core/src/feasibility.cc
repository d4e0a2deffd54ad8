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

#include "surrogate/feasibility.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "surrogate/status.h"

namespace surrogate {
namespace {

double SenseViolation(double r, RowSense sense) {
  switch (sense) {
    case RowSense::kLe:
      return std::max(0.0, r);
    case RowSense::kGe:
      return std::max(0.0, -r);
    case RowSense::kEq:
      return std::abs(r);
  }
  return std::abs(r);
}

}  // namespace

FeasibilityReport CheckFeasibility(const OptProblem& problem,
                                   std::span<const double> assignment,
                                   double tolerance) {
  if (assignment.size() != problem.num_variables()) {
    throw UsageError("assignment has " + std::to_string(assignment.size()) +
                     " entries, problem has " +
                     std::to_string(problem.num_variables()) + " variables");
  }
  FeasibilityReport report;
  auto add = [&](std::string name, ResidualKind kind, double r, double v) {
    report.max_residual = std::max(report.max_residual, v);
    if (v > tolerance) report.violated.push_back(name);
    report.residuals.push_back({std::move(name), kind, r, v});
  };

  for (const LinearConstraint& row : problem.linear_constraints()) {
    const double r = RowActivity(row, assignment) - row.rhs;
    add(row.name, ResidualKind::kLinear, r, SenseViolation(r, row.sense));
  }
  for (const NonlinearConstraint& row : problem.nonlinear_constraints()) {
    const double r = Evaluate(row.expr, assignment) - row.rhs;
    add(row.name, ResidualKind::kNonlinear, r, SenseViolation(r, row.sense));
  }
  for (std::size_t j = 0; j < problem.num_variables(); ++j) {
    const Variable& var = problem.variables()[j];
    const double x = assignment[j];
    double r = 0.0;
    if (x < var.lb) r = x - var.lb;
    if (x > var.ub) r = x - var.ub;
    if (std::isnan(x)) r = std::numeric_limits<double>::infinity();
    add(var.name, ResidualKind::kBound, r, std::abs(r));
    if (var.domain == VarDomain::kBinary) {
      const double d = std::min(std::abs(x), std::abs(x - 1.0));
      add(var.name, ResidualKind::kIntegrality, d, d);
    }
  }
  for (const ComplementarityPair& pair : problem.complementarity_pairs()) {
    const double a = Evaluate(pair.a, assignment);
    const double b = Evaluate(pair.b, assignment);
    const double product = a * b;
    const double v =
        std::max({std::abs(product), std::max(0.0, -a), std::max(0.0, -b)});
    report.max_complementarity_product =
        std::max(report.max_complementarity_product, std::abs(product));
    add(pair.name, ResidualKind::kComplementarity, product, v);
  }
  return report;
}

}  // namespace surrogate
