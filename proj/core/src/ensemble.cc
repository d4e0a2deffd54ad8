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

#include "surrogate/ensemble.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "surrogate/status.h"

namespace surrogate {
namespace {

[[noreturn]] void TreeError(std::size_t tree, std::size_t node,
                            const std::string& what) {
  throw ModelError("tree " + std::to_string(tree) + " node " +
                   std::to_string(node) + ": " + what);
}

}  // namespace

void ValidateEnsemble(const TreeEnsemble& ensemble) {
  if (ensemble.n_features == 0) throw ModelError("n_features must be positive");
  if (ensemble.feature_bounds.size() != ensemble.n_features) {
    throw ModelError("feature_bounds has " +
                     std::to_string(ensemble.feature_bounds.size()) +
                     " entries, n_features is " +
                     std::to_string(ensemble.n_features));
  }
  for (std::size_t f = 0; f < ensemble.n_features; ++f) {
    const Interval& b = ensemble.feature_bounds[f];
    if (!std::isfinite(b.lb) || !std::isfinite(b.ub) || b.lb > b.ub) {
      throw ModelError("feature bound " + std::to_string(f) +
                       " must be finite with lb <= ub");
    }
  }
  if (!std::isfinite(ensemble.base_score)) {
    throw ModelError("base_score is not finite");
  }
  for (std::size_t t = 0; t < ensemble.trees.size(); ++t) {
    const auto& nodes = ensemble.trees[t].nodes;
    if (nodes.empty()) TreeError(t, 0, "tree has no nodes");
    std::vector<int> parents(nodes.size(), 0);
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      if (const auto* leaf = std::get_if<TreeLeaf>(&nodes[n])) {
        if (!std::isfinite(leaf->value)) TreeError(t, n, "non-finite leaf");
        continue;
      }
      const auto& split = std::get<TreeSplit>(nodes[n]);
      if (split.feature >= ensemble.n_features) {
        TreeError(t, n, "feature index " + std::to_string(split.feature) +
                            " out of range for " +
                            std::to_string(ensemble.n_features) + " features");
      }
      if (!std::isfinite(split.threshold)) {
        TreeError(t, n, "non-finite threshold");
      }
      for (std::size_t child : {split.left, split.right}) {
        if (child >= nodes.size()) {
          TreeError(t, n, "child id " + std::to_string(child) +
                              " out of bounds (" +
                              std::to_string(nodes.size()) + " nodes)");
        }
        if (child == n) TreeError(t, n, "node is its own child (cycle)");
        if (child == 0) TreeError(t, n, "root referenced as a child (cycle)");
        ++parents[child];
      }
    }
    for (std::size_t n = 1; n < nodes.size(); ++n) {
      if (parents[n] == 0) TreeError(t, n, "node is unreachable");
      if (parents[n] > 1) {
        TreeError(t, n, "node has more than one parent (cycle or DAG)");
      }
    }
    // Exactly one parent per non-root node and none for the root still
    // admits a cycle detached from the root; a reachability walk rules it out.
    std::vector<bool> seen(nodes.size(), false);
    std::vector<std::size_t> stack = {0};
    std::size_t visited = 0;
    while (!stack.empty()) {
      const std::size_t n = stack.back();
      stack.pop_back();
      if (seen[n]) TreeError(t, n, "cycle detected");
      seen[n] = true;
      ++visited;
      if (const auto* split = std::get_if<TreeSplit>(&nodes[n])) {
        stack.push_back(split->right);
        stack.push_back(split->left);
      }
    }
    if (visited != nodes.size()) {
      const auto it = std::find(seen.begin(), seen.end(), false);
      TreeError(t, static_cast<std::size_t>(it - seen.begin()),
                "node is unreachable (cycle)");
    }
  }
}

std::size_t ReachedLeaf(const Tree& tree, std::span<const double> x) {
  std::size_t node = 0;
  for (std::size_t steps = 0; steps <= tree.nodes.size(); ++steps) {
    if (node >= tree.nodes.size()) {
      throw ModelError("node " + std::to_string(node) +
                       " referenced but not present");
    }
    const auto* split = std::get_if<TreeSplit>(&tree.nodes[node]);
    if (split == nullptr) return node;
    if (split->feature >= x.size()) {
      throw ModelError("split on feature " + std::to_string(split->feature) +
                       " but input has " + std::to_string(x.size()) +
                       " features");
    }
    node = x[split->feature] <= split->threshold ? split->left : split->right;
  }
  throw ModelError("tree walk did not terminate (cycle)");
}

double GbtPredict(const TreeEnsemble& ensemble, std::span<const double> x) {
  if (x.size() != ensemble.n_features) {
    throw ModelError("ensemble expects " + std::to_string(ensemble.n_features) +
                     " features, got " + std::to_string(x.size()));
  }
  double y = ensemble.base_score;
  for (const Tree& tree : ensemble.trees) {
    y += std::get<TreeLeaf>(tree.nodes[ReachedLeaf(tree, x)]).value;
  }
  return y;
}

std::vector<std::size_t> LeavesUnder(const Tree& tree, std::size_t node) {
  std::vector<std::size_t> leaves;
  std::vector<std::size_t> stack = {node};
  while (!stack.empty()) {
    const std::size_t n = stack.back();
    stack.pop_back();
    if (const auto* split = std::get_if<TreeSplit>(&tree.nodes[n])) {
      stack.push_back(split->left);
      stack.push_back(split->right);
    } else {
      leaves.push_back(n);
    }
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

}  // namespace surrogate
