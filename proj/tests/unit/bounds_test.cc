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
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "surrogate/status.h"
#include "test_support.h"

namespace surrogate {
namespace {

using ::surrogate::testing::Dense;
using ::surrogate::testing::Net;

TEST(PropagateBoundsTest, IdentityRelu) {
  const IntervalBounds b = PropagateBounds(
      Net({{-1, 1}}, {Dense({{1}}, {0}, Activation::kRelu)}));
  EXPECT_EQ(b.layers[0].pre[0], (Interval{-1, 1}));
  EXPECT_EQ(b.layers[0].post[0], (Interval{0, 1}));
  EXPECT_EQ(b.output[0], (Interval{0, 1}));
}

TEST(PropagateBoundsTest, MixedSignWeights) {
  const IntervalBounds b = PropagateBounds(
      Net({{0, 1}, {0, 1}}, {Dense({{1, -1}}, {1}, Activation::kLinear)}));
  EXPECT_EQ(b.layers[0].pre[0], (Interval{0, 2}));
}

TEST(PropagateBoundsTest, SigmoidOfZero) {
  const IntervalBounds b = PropagateBounds(
      Net({{0, 0}}, {Dense({{1}}, {0}, Activation::kSigmoid)}));
  EXPECT_EQ(b.layers[0].post[0], (Interval{0.5, 0.5}));
}

TEST(PropagateBoundsTest, ScalingMapsBothEnds) {
  NetworkDefinition net =
      Net({{0, 10}}, {Dense({{1}}, {0}, Activation::kLinear)});
  net.scaling = OffsetScaling{{0}, {-2}, {1}, {-1}};
  const IntervalBounds b = PropagateBounds(net);
  EXPECT_EQ(b.input[0], (Interval{-5, 0}));
  EXPECT_EQ(b.output[0], (Interval{1, 6}));
}

TEST(PropagateBoundsTest, InfiniteInputThrows) {
  EXPECT_THROW(PropagateBounds(Net({{-1, std::numeric_limits<double>::infinity()}},
                                   {Dense({{1}}, {0}, Activation::kRelu)})),
               ModelError);
}

TEST(PartitionSumBoundsTest, Examples) {
  const std::vector<Interval> unit = {{0, 1}, {0, 1}};
  EXPECT_EQ(PartitionSumBounds(std::vector<double>{1, -1}, unit, {{0}, {1}}),
            (std::vector<Interval>{{0, 1}, {-1, 0}}));
  EXPECT_EQ(PartitionSumBounds(std::vector<double>{1, -1}, unit, {{0, 1}}),
            (std::vector<Interval>{{-1, 1}}));
  EXPECT_EQ(PartitionSumBounds(std::vector<double>{2},
                               std::vector<Interval>{{-1, 1}}, {{0}}),
            (std::vector<Interval>{{-2, 2}}));
}

TEST(PartitionSumBoundsTest, RejectsBadCover) {
  const std::vector<Interval> unit = {{0, 1}, {0, 1}};
  EXPECT_THROW(PartitionSumBounds(std::vector<double>{1, 1}, unit, {{0}}),
               UsageError);
  EXPECT_THROW(
      PartitionSumBounds(std::vector<double>{1, 1}, unit, {{0, 1}, {1}}),
      UsageError);
}

TEST(DefaultPartitionTest, SortsByWeightAndSplitsEvenly) {
  const std::vector<double> w = {0.5, -2.0, 1.0, 0.0, -1.0};
  EXPECT_EQ(DefaultPartition(w, 2),
            (std::vector<std::vector<std::size_t>>{{1, 4, 3}, {0, 2}}));
  EXPECT_EQ(DefaultPartition(w, 1).size(), 1u);
  EXPECT_EQ(DefaultPartition(w, 9).size(), 5u);
}

bool Inside(double v, Interval i) { return i.lb <= v && v <= i.ub; }

TEST(PropagateBoundsTest, SampledContainment) {
  testing::Rng rng(17);
  testing::NetGenOptions options;
  options.conv_probability = 0.2;
  options.scaling_probability = 0.5;
  for (int trial = 0; trial < 40; ++trial) {
    options.family = trial % 2 ? testing::NetFamily::kSmooth
                               : testing::NetFamily::kRelu;
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    const IntervalBounds b = PropagateBounds(net);
    for (int s = 0; s < 200; ++s) {
      const ForwardTrace t = NnForwardTrace(net, testing::RandomInput(rng, net));
      for (std::size_t l = 0; l < t.pre.size(); ++l) {
        for (std::size_t i = 0; i < t.pre[l].size(); ++i) {
          ASSERT_TRUE(Inside(t.pre[l][i], b.layers[l].pre[i]));
          ASSERT_TRUE(Inside(t.post[l][i], b.layers[l].post[i]));
        }
      }
      for (std::size_t j = 0; j < t.output.size(); ++j) {
        ASSERT_TRUE(Inside(t.output[j], b.output[j]));
      }
    }
  }
}

TEST(PropagateBoundsTest, ShrinkingInputNeverWidens) {
  testing::Rng rng(19);
  testing::NetGenOptions options;
  for (int trial = 0; trial < 40; ++trial) {
    options.family = trial % 2 ? testing::NetFamily::kSmooth
                               : testing::NetFamily::kRelu;
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    NetworkDefinition inner = net;
    for (Interval& i : inner.input_bounds) {
      const double a = testing::Uniform(rng, i.lb, i.ub);
      const double c = testing::Uniform(rng, i.lb, i.ub);
      i = {std::min(a, c), std::max(a, c)};
    }
    const IntervalBounds outer_b = PropagateBounds(net);
    const IntervalBounds inner_b = PropagateBounds(inner);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      for (std::size_t i = 0; i < outer_b.layers[l].post.size(); ++i) {
        EXPECT_GE(inner_b.layers[l].post[i].lb, outer_b.layers[l].post[i].lb);
        EXPECT_LE(inner_b.layers[l].post[i].ub, outer_b.layers[l].post[i].ub);
      }
    }
  }
}

}  // namespace
}  // namespace surrogate
