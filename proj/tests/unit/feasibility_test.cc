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

#include "surrogate/feasibility.h"

#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "surrogate/formulation.h"
#include "test_support.h"

namespace surrogate {
namespace {

using ::surrogate::testing::Dense;
using ::surrogate::testing::Net;

TEST(CheckFeasibilityTest, FullSpaceForwardAssignment) {
  testing::Rng rng(107);
  testing::NetGenOptions options;
  options.family = testing::NetFamily::kSmooth;
  options.scaling_probability = 0.5;
  const FormulationKind kind{FormulationType::kFullSpaceSmooth, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    const OptProblem p = Formulate(net, kind);
    const std::vector<double> x = testing::RandomInput(rng, net);
    const FeasibilityReport r =
        CheckFeasibility(p, LiftForwardPass(net, kind, p, x));
    EXPECT_LE(r.max_residual, 1e-10);
  }
}

TEST(CheckFeasibilityTest, ComplementarityProductsVanish) {
  testing::Rng rng(109);
  testing::NetGenOptions options;
  const FormulationKind kind{FormulationType::kReluComplementarity, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    const OptProblem p = Formulate(net, kind);
    const std::vector<double> x = testing::RandomInput(rng, net);
    const FeasibilityReport r =
        CheckFeasibility(p, LiftForwardPass(net, kind, p, x));
    EXPECT_LE(r.max_complementarity_product, 1e-12);
  }
}

TEST(CheckFeasibilityTest, PerturbationFlagsOnlyAffectedRows) {
  // Two independent neurons; bump the first one's output.
  const NetworkDefinition net =
      Net({{-1, 1}, {-1, 1}}, {Dense({{1, 0}, {0, 1}}, {0, 0},
                                     Activation::kRelu)});
  const FormulationKind kind{FormulationType::kReluBigM, 2};
  const OptProblem p = Formulate(net, kind);
  std::vector<double> a =
      LiftForwardPass(net, kind, p, std::vector<double>{0.5, -0.5});
  a[p.Var("y[0]").value] += 0.1;
  const FeasibilityReport r = CheckFeasibility(p, a);
  EXPECT_EQ(r.violated, (std::vector<std::string>{"c_bigm_off[0][0]"}));
  a[p.Var("y[0]").value] -= 0.2;
  EXPECT_EQ(CheckFeasibility(p, a).violated,
            (std::vector<std::string>{"c_bigm_pre[0][0]"}));
}

TEST(CheckFeasibilityTest, BoundsAndIntegrality) {
  OptProblem p;
  p.AddVariable("x", VarDomain::kContinuous, 0, 1);
  p.AddVariable("b", VarDomain::kBinary, 0, 1);
  const FeasibilityReport r =
      CheckFeasibility(p, std::vector<double>{1.5, 0.4});
  ASSERT_EQ(r.violated.size(), 2u);
  EXPECT_EQ(r.violated[0], "x");
  EXPECT_EQ(r.violated[1], "b");
  EXPECT_DOUBLE_EQ(r.max_residual, 0.5);
}

TEST(CheckFeasibilityTest, NegativeComplementarityOperandIsViolation) {
  OptProblem p;
  const VarId a = p.AddVariable("a", VarDomain::kContinuous, -1, 1);
  const VarId b = p.AddVariable("b", VarDomain::kContinuous, -1, 1);
  p.AddComplementarity("cc", Expr::Variable(a), Expr::Variable(b));
  EXPECT_TRUE(CheckFeasibility(p, std::vector<double>{0.0, 0.5}).feasible());
  EXPECT_FALSE(CheckFeasibility(p, std::vector<double>{-0.5, 0.0}).feasible());
  EXPECT_FALSE(CheckFeasibility(p, std::vector<double>{0.5, 0.5}).feasible());
}

}  // namespace
}  // namespace surrogate
