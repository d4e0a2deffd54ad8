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

// Brute-force ground truth for the MILP formulations.

#ifndef SURROGATE_ORACLES_H_
#define SURROGATE_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "surrogate/ensemble.h"
#include "surrogate/network.h"
#include "surrogate/problem.h"
#include "surrogate/simplex.h"

namespace surrogate {

inline constexpr std::size_t kMaxOracleRelus = 16;
inline constexpr std::uint64_t kMaxOracleCells = 1000000;

// sense( input_weights . x + output_weights . y ), raw units. Either weight
// vector may be empty, meaning all zeros.
struct OracleObjective {
  ObjectiveSense sense = ObjectiveSense::kMaximize;
  std::vector<double> input_weights;
  std::vector<double> output_weights;
};

struct OracleResult {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;  // maximizer / minimizer, raw units
  std::uint64_t enumerated = 0;
  std::uint64_t feasible = 0;
};

// Enumerates all activation patterns of a relu/linear network, solving one
// LP per pattern. Throws UsageError for smooth activations or more than
// kMaxOracleRelus ReLU neurons.
OracleResult ReluPatternOracle(const NetworkDefinition& net,
                               const OracleObjective& objective);

// Evaluates the ensemble at one representative per cell of the threshold
// grid. Throws UsageError when the grid exceeds kMaxOracleCells cells.
OracleResult GbtCellOracle(const TreeEnsemble& ensemble, ObjectiveSense sense);

// Cell representatives for one feature: lb, midpoints between consecutive
// in-box thresholds, ub.
std::vector<double> CellRepresentatives(double lb, double ub,
                                        std::vector<double> thresholds);

}  // namespace surrogate

#endif  // SURROGATE_ORACLES_H_
