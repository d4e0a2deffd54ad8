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

// Exact desk-scale solving of OptProblem instances: LP via the dense simplex,
// mixed-binary and complementarity problems via best-bound branch-and-bound.

#ifndef SURROGATE_MILP_H_
#define SURROGATE_MILP_H_

#include <cstdint>
#include <string>
#include <vector>

#include "surrogate/problem.h"
#include "surrogate/simplex.h"

namespace surrogate {

inline constexpr std::int64_t kDefaultNodeLimit = 1000000;

struct SolveOptions {
  std::int64_t node_limit = kDefaultNodeLimit;
  double integrality_tolerance = 1e-6;
  // A pair counts as complementary once min(a, b) is at most this.
  double complementarity_tolerance = 1e-9;
  SimplexOptions simplex;
};

struct SolveStats {
  std::int64_t simplex_iterations = 0;
  std::int64_t nodes = 0;
  // Internal (minimization-sense) incumbent value after each improvement.
  std::vector<double> incumbent_trace;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kNumericalFailure;
  double objective = 0.0;  // user's sense
  std::vector<double> assignment;
  SolveStats stats;
  // Pure LPs only, minimization sense: one dual per linear constraint and a
  // reduced cost per variable.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  std::string message;
};

// Node limit from SURROGATE_COMPILER_NODE_LIMIT, else `fallback`. Throws
// UsageError on a malformed or non-positive value.
std::int64_t NodeLimitFromEnv(std::int64_t fallback = kDefaultNodeLimit);

// Throws SolverError for nonlinear rows or a nonlinear objective, and
// whenever a complementarity side is not affine.
SolveResult SolveLp(const OptProblem& problem, const SolveOptions& options = {});
SolveResult SolveMilp(const OptProblem& problem,
                      const SolveOptions& options = {});

// SolveMilp when there are binaries or complementarity pairs, else SolveLp.
SolveResult Solve(const OptProblem& problem, const SolveOptions& options = {});

}  // namespace surrogate

#endif  // SURROGATE_MILP_H_
