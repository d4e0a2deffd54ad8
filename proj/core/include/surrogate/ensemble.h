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

// Gradient-boosted tree ensemble IR.

#ifndef SURROGATE_ENSEMBLE_H_
#define SURROGATE_ENSEMBLE_H_

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "surrogate/network.h"

namespace surrogate {

// x[feature] <= threshold goes left, otherwise right. Ties go left.
struct TreeSplit {
  std::size_t feature = 0;
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;

  bool operator==(const TreeSplit&) const = default;
};

struct TreeLeaf {
  double value = 0.0;

  bool operator==(const TreeLeaf&) const = default;
};

using TreeNode = std::variant<TreeSplit, TreeLeaf>;

// Node 0 is the root.
struct Tree {
  std::vector<TreeNode> nodes;

  bool operator==(const Tree&) const = default;
};

struct TreeEnsemble {
  std::size_t n_features = 0;
  double base_score = 0.0;
  std::vector<Tree> trees;
  std::vector<Interval> feature_bounds;

  bool operator==(const TreeEnsemble&) const = default;
};

// Checks that every tree is a rooted binary tree over valid feature indices.
// Throws ModelError naming the tree index and node id.
void ValidateEnsemble(const TreeEnsemble& ensemble);

// base_score plus the reached leaf value of every tree.
double GbtPredict(const TreeEnsemble& ensemble, std::span<const double> x);

// Index of the leaf node reached in `tree`.
std::size_t ReachedLeaf(const Tree& tree, std::span<const double> x);

// Node ids of the leaves below `node` (inclusive), in ascending id order.
std::vector<std::size_t> LeavesUnder(const Tree& tree, std::size_t node);

}  // namespace surrogate

#endif  // SURROGATE_ENSEMBLE_H_
