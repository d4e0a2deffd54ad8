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

// Dense-tableau primal simplex for desk-scale linear programs.
//
// Bounded variables are handled implicitly (nonbasic at a bound), so bounds
// never become rows. Phase 1 minimizes the sum of artificials added only
// for rows whose slack cannot absorb the initial residual. Dantzig pricing
// switches to Bland's rule after a run of degenerate pivots, and the tableau
// is periodically rebuilt from the original matrix to shed round-off.

#ifndef SURROGATE_SIMPLEX_H_
#define SURROGATE_SIMPLEX_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "surrogate/problem.h"

namespace surrogate {

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kNodeLimit,
  kNumericalFailure,
};

std::string_view SolveStatusName(SolveStatus status);

struct LpRow {
  std::vector<std::pair<std::size_t, double>> terms;
  RowSense sense = RowSense::kLe;
  double rhs = 0.0;
};

// minimize cost . x + cost_offset  s.t. rows, lb <= x <= ub.
struct LinearProgram {
  std::vector<double> cost;
  double cost_offset = 0.0;
  std::vector<double> lb;
  std::vector<double> ub;
  std::vector<LpRow> rows;

  std::size_t num_vars() const { return cost.size(); }
  std::size_t AddVar(double cost_coef, double lower, double upper) {
    cost.push_back(cost_coef);
    lb.push_back(lower);
    ub.push_back(upper);
    return cost.size() - 1;
  }
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  int bland_after_degenerate = 500;
  int refactor_every = 100;
  // 0 picks a limit from the problem size.
  std::int64_t max_iterations = 0;
};

struct LpResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  double objective = 0.0;
  std::vector<double> x;
  // Optimal only. Row duals y and reduced costs c - A^T y; for a minimization
  // y_i <= 0 on <= rows and y_i >= 0 on >= rows.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  std::int64_t iterations = 0;
  bool used_bland = false;
  std::string message;
};

LpResult SolveLinearProgram(const LinearProgram& lp,
                            const SimplexOptions& options = {});

}  // namespace surrogate

#endif  // SURROGATE_SIMPLEX_H_
