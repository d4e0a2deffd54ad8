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

#include <vector>

#include <gtest/gtest.h>

#include "surrogate/status.h"
#include "test_support.h"

namespace surrogate {
namespace {

using ::surrogate::testing::Dense;
using ::surrogate::testing::Net;

const OracleObjective kMaxY{ObjectiveSense::kMaximize, {}, {1.0}};

TEST(ReluPatternOracleTest, IdentityNetIsPlainLp) {
  const OracleResult r = ReluPatternOracle(
      Net({{-1, 2}}, {Dense({{1}}, {0}, Activation::kLinear)}), kMaxY);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.objective, 2.0);
  EXPECT_EQ(r.enumerated, 1u);
}

TEST(ReluPatternOracleTest, OneNeuronTwoPatterns) {
  const OracleResult r = ReluPatternOracle(
      Net({{-1, 1}}, {Dense({{-2}}, {0.5}, Activation::kRelu)}), kMaxY);
  EXPECT_EQ(r.enumerated, 2u);
  EXPECT_EQ(r.feasible, 2u);
  EXPECT_DOUBLE_EQ(r.objective, 2.5);
  EXPECT_DOUBLE_EQ(r.x[0], -1.0);
}

TEST(ReluPatternOracleTest, AbsoluteValueNet) {
  const NetworkDefinition net =
      Net({{-1, 1}}, {Dense({{1}, {-1}}, {0, 0}, Activation::kRelu),
                      Dense({{1, 1}}, {0}, Activation::kLinear)});
  EXPECT_DOUBLE_EQ(ReluPatternOracle(net, kMaxY).objective, 1.0);
  const OracleResult min =
      ReluPatternOracle(net, {ObjectiveSense::kMinimize, {}, {1.0}});
  EXPECT_NEAR(min.objective, 0.0, 1e-12);
}

TEST(ReluPatternOracleTest, InputWeightsAndScaling) {
  NetworkDefinition net =
      Net({{0, 10}}, {Dense({{1}}, {-0.5}, Activation::kRelu)});
  net.scaling = OffsetScaling{{0}, {10}, {1}, {2}};
  // y = 1 + 2 relu(x/10 - 0.5); maximize y - 0.1 x.
  const OracleResult r =
      ReluPatternOracle(net, {ObjectiveSense::kMaximize, {-0.1}, {1.0}});
  EXPECT_NEAR(r.objective, 1.0, 1e-12);
  const std::vector<double> y = NnForward(net, r.x);
  EXPECT_NEAR(y[0] - 0.1 * r.x[0], r.objective, 1e-12);
}

TEST(ReluPatternOracleTest, Refusals) {
  EXPECT_THROW(
      ReluPatternOracle(Net({{-1, 1}}, {Dense({{1}}, {0}, Activation::kTanh)}),
                        kMaxY),
      UsageError);
  std::vector<std::vector<double>> w(17, std::vector<double>{1.0});
  EXPECT_THROW(ReluPatternOracle(
                   Net({{-1, 1}}, {Dense(w, std::vector<double>(17, 0.0),
                                         Activation::kRelu)}),
                   kMaxY),
               UsageError);
}

TEST(ReluPatternOracleTest, NeverBelowSampledValues) {
  testing::Rng rng(101);
  testing::NetGenOptions options;
  options.max_relus = 8;
  options.single_output = true;
  options.conv_probability = 0.3;
  for (int trial = 0; trial < 30; ++trial) {
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    const OracleResult r = ReluPatternOracle(net, kMaxY);
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    EXPECT_NEAR(NnForward(net, r.x)[0], r.objective, 1e-7);
    for (int s = 0; s < 200; ++s) {
      EXPECT_LE(NnForward(net, testing::RandomInput(rng, net))[0],
                r.objective + 1e-9);
    }
  }
}

TEST(CellRepresentativesTest, BoundsAndMidpoints) {
  EXPECT_EQ(CellRepresentatives(0, 1, {0.5}),
            (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(CellRepresentatives(0, 10, {2, 2, 6, -3, 10}),
            (std::vector<double>{0.0, 4.0, 10.0}));
}

Tree Stump(std::size_t f, double t, double left, double right) {
  Tree tree;
  tree.nodes = {TreeSplit{f, t, 1, 2}, TreeLeaf{left}, TreeLeaf{right}};
  return tree;
}

TEST(GbtCellOracleTest, Stump) {
  const TreeEnsemble ens{1, 0.0, {Stump(0, 0.5, 1, 2)}, {{0, 1}}};
  EXPECT_EQ(GbtCellOracle(ens, ObjectiveSense::kMaximize).objective, 2.0);
  EXPECT_EQ(GbtCellOracle(ens, ObjectiveSense::kMinimize).objective, 1.0);
}

TEST(GbtCellOracleTest, ConstantEnsemble) {
  Tree leaf;
  leaf.nodes = {TreeLeaf{0.7}};
  const TreeEnsemble ens{1, 0.3, {leaf, leaf}, {{0, 1}}};
  EXPECT_DOUBLE_EQ(GbtCellOracle(ens, ObjectiveSense::kMaximize).objective, 1.7);
  EXPECT_DOUBLE_EQ(GbtCellOracle(ens, ObjectiveSense::kMinimize).objective, 1.7);
}

TEST(GbtCellOracleTest, TwoFeaturesFourCells) {
  const TreeEnsemble ens{
      2, 0.0, {Stump(0, 0.5, 0, 1), Stump(1, 0.5, 0, 10)}, {{0, 1}, {0, 1}}};
  const OracleResult r = GbtCellOracle(ens, ObjectiveSense::kMaximize);
  EXPECT_EQ(r.enumerated, 4u);
  EXPECT_EQ(r.objective, 11.0);
}

TEST(GbtCellOracleTest, MatchesDenseSampling) {
  testing::Rng rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    const TreeEnsemble ens = testing::RandomEnsemble(rng, {});
    const double max = GbtCellOracle(ens, ObjectiveSense::kMaximize).objective;
    const double min = GbtCellOracle(ens, ObjectiveSense::kMinimize).objective;
    for (int s = 0; s < 500; ++s) {
      std::vector<double> x(ens.n_features);
      for (double& v : x) v = testing::Uniform(rng, 0, 10);
      const double y = GbtPredict(ens, x);
      EXPECT_LE(y, max);
      EXPECT_GE(y, min);
    }
  }
}

}  // namespace
}  // namespace surrogate
