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

// Forward interval arithmetic over a network. The resulting intervals supply
// the big-M constants and partition-sum bounds used by the ReLU formulations.

#ifndef SURROGATE_BOUNDS_H_
#define SURROGATE_BOUNDS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "surrogate/network.h"

namespace surrogate {

struct LayerBounds {
  std::vector<Interval> pre;
  std::vector<Interval> post;
};

struct IntervalBounds {
  std::vector<Interval> input;  // after input scaling
  std::vector<LayerBounds> layers;
  std::vector<Interval> output;  // after output unscaling
};

// Requires finite input bounds (throws ModelError otherwise).
IntervalBounds PropagateBounds(const NetworkDefinition& net);

// [b + sum min(w L, w U), b + sum max(w L, w U)], accumulated in term order.
Interval AffineRowBounds(std::span<const AffineTerm> row, double bias,
                         std::span<const Interval> incoming);

// Bounds on each partial sum sum_{i in class k} weights[i] * x_i. The classes
// must be non-empty and form a disjoint cover of [0, weights.size()).
std::vector<Interval> PartitionSumBounds(
    std::span<const double> weights, std::span<const Interval> incoming,
    const std::vector<std::vector<std::size_t>>& partitions);

// Sorts indices by (weight, index) and cuts them into min(n, fan-in)
// contiguous classes of equal size; the first classes absorb the remainder.
std::vector<std::vector<std::size_t>> DefaultPartition(
    std::span<const double> weights, std::size_t n);

}  // namespace surrogate

#endif  // SURROGATE_BOUNDS_H_
