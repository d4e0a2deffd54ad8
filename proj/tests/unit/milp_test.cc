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

#include "surrogate/milp.h"

#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "surrogate/formulation.h"
#include "surrogate/oracles.h"
#include "surrogate/status.h"
#include "test_support.h"

namespace surrogate {
namespace {

using ::surrogate::testing::Dense;
using ::surrogate::testing::Net;

constexpr double kInf = std::numeric_limits<double>::infinity();

OptProblem Knapsack() {
  OptProblem p;
  const VarId a = p.AddVariable("a", VarDomain::kBinary, 0, 1);
  const VarId b = p.AddVariable("b", VarDomain::kBinary, 0, 1);
  p.AddLinearConstraint("cap", {{a, 1.0}, {b, 1.0}}, RowSense::kLe, 1.0);
  p.SetObjective({ObjectiveSense::kMaximize,
                  2.0 * Expr::Variable(a) + 3.0 * Expr::Variable(b)});
  return p;
}

TEST(SolveMilpTest, Knapsack) {
  const SolveResult r = SolveMilp(Knapsack());
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.objective, 3.0);
  EXPECT_EQ(r.assignment, (std::vector<double>{0.0, 1.0}));
}

TEST(SolveMilpTest, FractionalRootNeedsBranching) {
  OptProblem p;
  std::vector<VarId> v;
  const double w[] = {3, 4, 5, 6};
  const double c[] = {4, 5, 7, 8};
  std::vector<LinearTerm> cap;
  Expr obj;
  for (int i = 0; i < 4; ++i) {
    v.push_back(p.AddVariable("v" + std::to_string(i), VarDomain::kBinary, 0, 1));
    cap.push_back({v.back(), w[i]});
    obj = obj + c[i] * Expr::Variable(v.back());
  }
  p.AddLinearConstraint("cap", cap, RowSense::kLe, 10.0);
  p.SetObjective({ObjectiveSense::kMaximize, obj});
  const SolveResult r = SolveMilp(p);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  // Best subsets: {3,5}->11, {4,6}->13, {3,6}->12, {4,5}->12.
  EXPECT_EQ(r.objective, 13.0);
  EXPECT_GT(r.stats.nodes, 1);
}

TEST(SolveMilpTest, IncumbentTraceNonincreasing) {
  testing::Rng rng(79);
  testing::NetGenOptions options;
  options.max_relus = 10;
  for (int trial = 0; trial < 20; ++trial) {
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    const OptProblem p =
        LinkObjective(Formulate(net, {FormulationType::kReluBigM, 2}),
                      ParseObjectiveSpec("y[0]", ObjectiveSense::kMaximize));
    const SolveResult r = SolveMilp(p);
    ASSERT_EQ(r.status, SolveStatus::kOptimal);
    const std::vector<double>& trace = r.stats.incumbent_trace;
    ASSERT_FALSE(trace.empty());
    for (std::size_t k = 1; k < trace.size(); ++k) {
      EXPECT_LT(trace[k], trace[k - 1]);
    }
    EXPECT_EQ(-trace.back(), r.objective);
  }
}

TEST(SolveMilpTest, ReluNeuronMaximum) {
  const NetworkDefinition net =
      Net({{-1, 1}}, {Dense({{1}}, {0}, Activation::kRelu)});
  const OptProblem p =
      LinkObjective(Formulate(net, {FormulationType::kReluBigM, 2}),
                    ParseObjectiveSpec("y[0]", ObjectiveSense::kMaximize));
  EXPECT_EQ(SolveMilp(p).objective, 1.0);
}

TEST(SolveMilpTest, RandomTwoLayerNetsMatchOracle) {
  testing::Rng rng(83);
  testing::NetGenOptions options;
  options.min_layers = 2;
  options.max_layers = 2;
  options.single_output = true;
  for (int trial = 0; trial < 40; ++trial) {
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    const OptProblem p =
        LinkObjective(Formulate(net, {FormulationType::kReluBigM, 2}),
                      ParseObjectiveSpec("y[0]", ObjectiveSense::kMaximize));
    const OracleResult oracle =
        ReluPatternOracle(net, {ObjectiveSense::kMaximize, {}, {1.0}});
    EXPECT_NEAR(SolveMilp(p).objective, oracle.objective, 1e-6)
        << "trial " << trial;
  }
}

TEST(SolveMilpTest, ComplementarityMatchesBigM) {
  testing::Rng rng(89);
  testing::NetGenOptions options;
  options.max_relus = 6;
  options.single_output = true;
  for (int trial = 0; trial < 20; ++trial) {
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    auto solve = [&](FormulationType t) {
      return Solve(LinkObjective(
                       Formulate(net, {t, 2}),
                       ParseObjectiveSpec("y[0]", ObjectiveSense::kMinimize)))
          .objective;
    };
    EXPECT_NEAR(solve(FormulationType::kReluComplementarity),
                solve(FormulationType::kReluBigM), 1e-6);
  }
}

TEST(SolveMilpTest, InfeasibleAndUnbounded) {
  OptProblem infeasible;
  const VarId a = infeasible.AddVariable("a", VarDomain::kBinary, 0, 1);
  infeasible.AddLinearConstraint("half", {{a, 2.0}}, RowSense::kEq, 1.0);
  EXPECT_EQ(SolveMilp(infeasible).status, SolveStatus::kInfeasible);

  OptProblem unbounded;
  const VarId x = unbounded.AddVariable("x", VarDomain::kContinuous, 0, kInf);
  const VarId b = unbounded.AddVariable("b", VarDomain::kBinary, 0, 1);
  unbounded.AddLinearConstraint("r", {{x, 1.0}, {b, -1.0}}, RowSense::kGe, 0);
  unbounded.SetObjective({ObjectiveSense::kMaximize, Expr::Variable(x)});
  EXPECT_EQ(SolveMilp(unbounded).status, SolveStatus::kUnbounded);
}

TEST(SolveMilpTest, NodeLimitKeepsIncumbent) {
  testing::Rng rng(97);
  testing::NetGenOptions options;
  options.min_layers = 3;
  options.max_relus = 14;
  for (int trial = 0; trial < 50; ++trial) {
    const NetworkDefinition net = testing::RandomNetwork(rng, options);
    const OptProblem p =
        LinkObjective(Formulate(net, {FormulationType::kReluBigM, 2}),
                      ParseObjectiveSpec("y[0]", ObjectiveSense::kMaximize));
    const SolveResult full = SolveMilp(p);
    if (full.stats.nodes < 5) continue;
    SolveOptions options_limited;
    options_limited.node_limit = 2;
    const SolveResult r = SolveMilp(p, options_limited);
    EXPECT_EQ(r.status, SolveStatus::kNodeLimit);
    EXPECT_LE(r.stats.nodes, 2);
    if (!r.assignment.empty()) EXPECT_LE(r.objective, full.objective + 1e-9);
    return;
  }
  FAIL() << "no instance needed branching";
}

TEST(NodeLimitFromEnvTest, ReadsVariable) {
  unsetenv("SURROGATE_COMPILER_NODE_LIMIT");
  EXPECT_EQ(NodeLimitFromEnv(), kDefaultNodeLimit);
  EXPECT_EQ(NodeLimitFromEnv(7), 7);
  setenv("SURROGATE_COMPILER_NODE_LIMIT", "42", 1);
  EXPECT_EQ(NodeLimitFromEnv(), 42);
  setenv("SURROGATE_COMPILER_NODE_LIMIT", "many", 1);
  EXPECT_THROW(NodeLimitFromEnv(), UsageError);
  unsetenv("SURROGATE_COMPILER_NODE_LIMIT");
}

TEST(SolveTest, RejectsNonlinearContent) {
  const NetworkDefinition net =
      Net({{-1, 1}}, {Dense({{1}}, {0}, Activation::kTanh)});
  const OptProblem p =
      LinkObjective(Formulate(net, {FormulationType::kFullSpaceSmooth, 2}),
                    ParseObjectiveSpec("y[0]", ObjectiveSense::kMaximize));
  EXPECT_THROW(Solve(p), SolverError);
}

TEST(SolveLpTest, RejectsIntegerContentAndReportsDuals) {
  EXPECT_THROW(SolveLp(Knapsack()), SolverError);
  OptProblem p;
  const VarId x = p.AddVariable("x", VarDomain::kContinuous, 0, 5);
  p.AddLinearConstraint("r", {{x, 1.0}}, RowSense::kLe, 2.0);
  p.SetObjective({ObjectiveSense::kMaximize, Expr::Variable(x)});
  const SolveResult r = SolveLp(p);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.objective, 2.0);
  ASSERT_EQ(r.row_duals.size(), 1u);
  EXPECT_NEAR(r.row_duals[0], -1.0, 1e-12);
}

}  // namespace
}  // namespace surrogate
