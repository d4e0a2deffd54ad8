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

// Constraint-by-constraint residual report for a full assignment.

#ifndef SURROGATE_FEASIBILITY_H_
#define SURROGATE_FEASIBILITY_H_

#include <span>
#include <string>
#include <vector>

#include "surrogate/problem.h"

namespace surrogate {

enum class ResidualKind {
  kLinear,
  kNonlinear,
  kBound,
  kIntegrality,
  kComplementarity,
};

struct Residual {
  std::string name;
  ResidualKind kind = ResidualKind::kLinear;
  // lhs - rhs for rows; distance outside the box for bounds; distance to
  // {0, 1} for binaries; a * b for complementarity pairs.
  double signed_residual = 0.0;
  // Nonnegative amount by which the requirement is missed.
  double violation = 0.0;
};

struct FeasibilityReport {
  std::vector<Residual> residuals;
  double max_residual = 0.0;  // over every entry, products included
  double max_complementarity_product = 0.0;
  std::vector<std::string> violated;  // names with violation > tolerance

  bool feasible() const { return violated.empty(); }
};

FeasibilityReport CheckFeasibility(const OptProblem& problem,
                                   std::span<const double> assignment,
                                   double tolerance = 1e-7);

}  // namespace surrogate

#endif  // SURROGATE_FEASIBILITY_H_
