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

#include "surrogate/bounds.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "surrogate/status.h"

namespace surrogate {
namespace {

Interval ScaleInterval(Interval b, double offset, double factor) {
  Interval out{(b.lb - offset) / factor, (b.ub - offset) / factor};
  if (factor < 0) std::swap(out.lb, out.ub);
  return out;
}

Interval UnscaleInterval(Interval b, double offset, double factor) {
  Interval out{b.lb * factor + offset, b.ub * factor + offset};
  if (factor < 0) std::swap(out.lb, out.ub);
  return out;
}

}  // namespace

Interval AffineRowBounds(std::span<const AffineTerm> row, double bias,
                         std::span<const Interval> incoming) {
  Interval out{bias, bias};
  for (const AffineTerm& t : row) {
    const double a = t.weight * incoming[t.index].lb;
    const double b = t.weight * incoming[t.index].ub;
    out.lb += std::min(a, b);
    out.ub += std::max(a, b);
  }
  return out;
}

IntervalBounds PropagateBounds(const NetworkDefinition& net) {
  RequireFiniteInputBounds(net);
  IntervalBounds bounds;
  bounds.input = net.input_bounds;
  if (net.scaling) {
    for (std::size_t i = 0; i < net.input_size; ++i) {
      bounds.input[i] =
          ScaleInterval(bounds.input[i], net.scaling->input_offset[i],
                        net.scaling->input_factor[i]);
    }
  }
  const std::vector<Interval>* incoming = &bounds.input;
  bounds.layers.reserve(net.layers.size());
  for (const Layer& layer : net.layers) {
    const SparseAffine map = LayerAffine(layer);
    LayerBounds lb;
    lb.pre.reserve(map.out_dim());
    lb.post.reserve(map.out_dim());
    for (std::size_t i = 0; i < map.out_dim(); ++i) {
      const Interval pre = AffineRowBounds(map.rows[i], map.bias[i], *incoming);
      lb.pre.push_back(pre);
      lb.post.push_back({Activate(layer.activation, pre.lb),
                         Activate(layer.activation, pre.ub)});
    }
    bounds.layers.push_back(std::move(lb));
    incoming = &bounds.layers.back().post;
  }
  bounds.output = *incoming;
  if (net.scaling) {
    for (std::size_t j = 0; j < bounds.output.size(); ++j) {
      bounds.output[j] =
          UnscaleInterval(bounds.output[j], net.scaling->output_offset[j],
                          net.scaling->output_factor[j]);
    }
  }
  return bounds;
}

std::vector<Interval> PartitionSumBounds(
    std::span<const double> weights, std::span<const Interval> incoming,
    const std::vector<std::vector<std::size_t>>& partitions) {
  if (incoming.size() != weights.size()) {
    throw UsageError("partition bounds: weights and incoming bounds differ in "
                     "length");
  }
  std::vector<bool> covered(weights.size(), false);
  std::vector<Interval> out;
  out.reserve(partitions.size());
  for (std::size_t k = 0; k < partitions.size(); ++k) {
    if (partitions[k].empty()) {
      throw UsageError("partition class " + std::to_string(k) + " is empty");
    }
    Interval sum{0.0, 0.0};
    for (std::size_t i : partitions[k]) {
      if (i >= weights.size() || covered[i]) {
        throw UsageError("partition classes must be a disjoint cover of the "
                         "fan-in (index " + std::to_string(i) + ")");
      }
      covered[i] = true;
      const double a = weights[i] * incoming[i].lb;
      const double b = weights[i] * incoming[i].ub;
      sum.lb += std::min(a, b);
      sum.ub += std::max(a, b);
    }
    out.push_back(sum);
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw UsageError("partition classes do not cover the fan-in");
  }
  return out;
}

std::vector<std::vector<std::size_t>> DefaultPartition(
    std::span<const double> weights, std::size_t n) {
  if (n == 0) throw UsageError("partition count must be at least 1");
  const std::size_t fan_in = weights.size();
  if (fan_in == 0) return {};
  n = std::min(n, fan_in);
  std::vector<std::size_t> order(fan_in);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return weights[a] < weights[b];
                   });
  std::vector<std::vector<std::size_t>> classes(n);
  const std::size_t base = fan_in / n;
  const std::size_t extra = fan_in % n;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t size = base + (k < extra ? 1 : 0);
    classes[k].assign(order.begin() + static_cast<long>(pos),
                      order.begin() + static_cast<long>(pos + size));
    pos += size;
  }
  return classes;
}

}  // namespace surrogate
