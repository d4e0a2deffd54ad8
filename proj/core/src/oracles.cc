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

#include "surrogate/oracles.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "surrogate/status.h"

namespace surrogate {
namespace {

// c . x + d over the raw input.
struct Affine {
  std::vector<double> coef;
  double constant = 0.0;
};

Affine Zero(std::size_t n) { return Affine{std::vector<double>(n, 0.0), 0.0}; }

void AddScaled(Affine& acc, const Affine& term, double w) {
  for (std::size_t i = 0; i < acc.coef.size(); ++i) acc.coef[i] += w * term.coef[i];
  acc.constant += w * term.constant;
}

LpRow SignRow(const Affine& a, RowSense sense) {
  LpRow row;
  row.sense = sense;
  row.rhs = -a.constant;
  for (std::size_t i = 0; i < a.coef.size(); ++i) {
    if (a.coef[i] != 0.0) row.terms.emplace_back(i, a.coef[i]);
  }
  return row;
}

}  // namespace

OracleResult ReluPatternOracle(const NetworkDefinition& net,
                               const OracleObjective& objective) {
  ValidateNetwork(net);
  RequireFiniteInputBounds(net);
  std::size_t relus = 0;
  for (const Layer& layer : net.layers) {
    if (layer.activation == Activation::kRelu) {
      relus += layer.OutputSize();
    } else if (layer.activation != Activation::kLinear) {
      throw UsageError("pattern oracle needs a relu/linear network");
    }
  }
  if (relus > kMaxOracleRelus) {
    throw UsageError("pattern oracle refused: " + std::to_string(relus) +
                     " relu neurons (limit " +
                     std::to_string(kMaxOracleRelus) + ")");
  }
  const std::size_t n = net.input_size;
  std::vector<SparseAffine> maps;
  for (const Layer& layer : net.layers) maps.push_back(LayerAffine(layer));

  const double sign = objective.sense == ObjectiveSense::kMaximize ? -1.0 : 1.0;
  OracleResult best;
  best.status = SolveStatus::kInfeasible;
  double best_internal = std::numeric_limits<double>::infinity();
  const std::uint64_t patterns = std::uint64_t{1} << relus;
  best.enumerated = patterns;

  for (std::uint64_t pattern = 0; pattern < patterns; ++pattern) {
    LinearProgram lp;
    for (std::size_t i = 0; i < n; ++i) {
      lp.AddVar(0.0, net.input_bounds[i].lb, net.input_bounds[i].ub);
    }
    std::vector<Affine> current(n, Zero(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (net.scaling) {
        const double fac = net.scaling->input_factor[i];
        current[i].coef[i] = 1.0 / fac;
        current[i].constant = -net.scaling->input_offset[i] / fac;
      } else {
        current[i].coef[i] = 1.0;
      }
    }
    std::size_t bit = 0;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      const SparseAffine& map = maps[l];
      std::vector<Affine> next;
      next.reserve(map.out_dim());
      for (std::size_t r = 0; r < map.out_dim(); ++r) {
        Affine pre = Zero(n);
        pre.constant = map.bias[r];
        for (const AffineTerm& t : map.rows[r]) AddScaled(pre, current[t.index], t.weight);
        if (net.layers[l].activation == Activation::kRelu) {
          const bool active = (pattern >> bit++) & 1;
          lp.rows.push_back(SignRow(pre, active ? RowSense::kGe : RowSense::kLe));
          next.push_back(active ? pre : Zero(n));
        } else {
          next.push_back(pre);
        }
      }
      current = std::move(next);
    }
    Affine goal = Zero(n);
    for (std::size_t i = 0; i < objective.input_weights.size(); ++i) {
      goal.coef[i] += objective.input_weights[i];
    }
    for (std::size_t j = 0; j < objective.output_weights.size(); ++j) {
      const double w = objective.output_weights[j];
      if (w == 0.0) continue;
      if (net.scaling) {
        AddScaled(goal, current[j], w * net.scaling->output_factor[j]);
        goal.constant += w * net.scaling->output_offset[j];
      } else {
        AddScaled(goal, current[j], w);
      }
    }
    for (std::size_t i = 0; i < n; ++i) lp.cost[i] = sign * goal.coef[i];
    lp.cost_offset = sign * goal.constant;

    const LpResult res = SolveLinearProgram(lp);
    if (res.status == SolveStatus::kInfeasible) continue;
    if (res.status != SolveStatus::kOptimal) {
      best.status = res.status;
      return best;
    }
    ++best.feasible;
    if (res.objective < best_internal) {
      best_internal = res.objective;
      best.x = res.x;
    }
  }
  if (best.feasible > 0) {
    best.status = SolveStatus::kOptimal;
    best.objective = sign * best_internal;
    if (best.objective == 0.0) best.objective = 0.0;
  }
  return best;
}

std::vector<double> CellRepresentatives(double lb, double ub,
                                        std::vector<double> thresholds) {
  std::vector<double> inside;
  for (double t : thresholds) {
    if (t >= lb && t < ub) inside.push_back(t);
  }
  std::sort(inside.begin(), inside.end());
  inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
  std::vector<double> reps;
  reps.push_back(lb);
  for (std::size_t j = 0; j + 1 < inside.size(); ++j) {
    reps.push_back(0.5 * (inside[j] + inside[j + 1]));
  }
  if (!inside.empty()) reps.push_back(ub);
  return reps;
}

OracleResult GbtCellOracle(const TreeEnsemble& ensemble, ObjectiveSense sense) {
  ValidateEnsemble(ensemble);
  std::vector<std::vector<double>> thresholds(ensemble.n_features);
  for (const Tree& tree : ensemble.trees) {
    for (const TreeNode& node : tree.nodes) {
      if (const auto* split = std::get_if<TreeSplit>(&node)) {
        thresholds[split->feature].push_back(split->threshold);
      }
    }
  }
  std::vector<std::vector<double>> reps(ensemble.n_features);
  double cells = 1.0;
  for (std::size_t f = 0; f < ensemble.n_features; ++f) {
    reps[f] = CellRepresentatives(ensemble.feature_bounds[f].lb,
                                  ensemble.feature_bounds[f].ub,
                                  thresholds[f]);
    cells *= static_cast<double>(reps[f].size());
  }
  if (cells > static_cast<double>(kMaxOracleCells)) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.0f", cells);
    throw UsageError(std::string("cell oracle refused: ") + buf +
                     " cells (limit " + std::to_string(kMaxOracleCells) + ")");
  }
  OracleResult best;
  best.status = SolveStatus::kOptimal;
  const bool maximize = sense == ObjectiveSense::kMaximize;
  std::vector<std::size_t> digit(ensemble.n_features, 0);
  std::vector<double> x(ensemble.n_features);
  bool have = false;
  while (true) {
    for (std::size_t f = 0; f < ensemble.n_features; ++f) x[f] = reps[f][digit[f]];
    const double value = GbtPredict(ensemble, x);
    ++best.enumerated;
    if (!have || (maximize ? value > best.objective : value < best.objective)) {
      best.objective = value;
      best.x = x;
      have = true;
    }
    std::size_t f = 0;
    while (f < digit.size() && ++digit[f] == reps[f].size()) digit[f++] = 0;
    if (f == digit.size()) break;
  }
  best.feasible = best.enumerated;
  return best;
}

}  // namespace surrogate
