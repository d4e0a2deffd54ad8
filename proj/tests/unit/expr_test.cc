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

#include "surrogate/expr.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "surrogate/status.h"
#include "test_support.h"

namespace surrogate {
namespace {

Expr X(std::size_t i) { return Expr::Variable(VarId{i}); }
Expr C(double v) { return Expr::Constant(v); }

TEST(EvaluateTest, Examples) {
  const std::vector<double> at = {0.7};
  EXPECT_EQ(Evaluate(Expr::Tanh(C(0) * X(0)), at), 0.0);
  EXPECT_EQ(Evaluate(Expr::Softplus(C(0)), at), 0.6931471805599453);
  EXPECT_EQ(Evaluate(Expr::Sigmoid(X(0)) * C(4), std::vector<double>{0}), 2.0);
}

TEST(EvaluateTest, AllOperators) {
  const std::vector<double> at = {2.0, 3.0};
  EXPECT_EQ(Evaluate(X(0) + X(1), at), 5.0);
  EXPECT_EQ(Evaluate(X(0) - X(1), at), -1.0);
  EXPECT_EQ(Evaluate(X(0) / X(1), at), 2.0 / 3.0);
  EXPECT_EQ(Evaluate(Expr::Exp(X(0)), at), std::exp(2.0));
  EXPECT_EQ(Evaluate(Expr::Log(X(1)), at), std::log(3.0));
  EXPECT_EQ(Evaluate(Expr::Max(X(0), X(1)), at), 3.0);
  EXPECT_EQ(Evaluate(2.5 * X(0), at), 5.0);
}

TEST(EvaluateTest, OutOfRangeVariableThrows) {
  EXPECT_THROW(Evaluate(X(3), std::vector<double>{1.0}), UsageError);
}

TEST(GradientTest, Examples) {
  EXPECT_EQ(Gradient(X(0) * X(0), std::vector<double>{3.0}),
            std::vector<double>{6.0});
  EXPECT_EQ(Gradient(Expr::Sigmoid(X(0)), std::vector<double>{0.0}),
            std::vector<double>{0.25});
}

TEST(GradientTest, MaxTieGoesToFirstArgument) {
  EXPECT_EQ(Gradient(Expr::Max(X(0), X(1)), std::vector<double>{1.0, 1.0}),
            (std::vector<double>{1.0, 0.0}));
}

TEST(GradientTest, SharedSubexpressionAccumulates) {
  const Expr s = X(0) * X(1);
  const std::vector<double> g =
      Gradient(s + s, std::vector<double>{2.0, 5.0, 9.0});
  EXPECT_EQ(g, (std::vector<double>{10.0, 4.0, 0.0}));
}

// Random expression over `vars` variables with `ops` operator nodes. Division
// and log only see arguments bounded away from zero.
Expr RandomExpr(testing::Rng& rng, std::size_t vars, int ops) {
  if (ops == 0) {
    return testing::UniformIndex(rng, 0, 3) == 0
               ? C(testing::Uniform(rng, -2, 2))
               : X(testing::UniformIndex(rng, 0, vars - 1));
  }
  switch (testing::UniformIndex(rng, 0, 9)) {
    case 0: {
      const int left = static_cast<int>(testing::UniformIndex(rng, 0, ops - 1));
      return RandomExpr(rng, vars, left) + RandomExpr(rng, vars, ops - 1 - left);
    }
    case 1: {
      const int left = static_cast<int>(testing::UniformIndex(rng, 0, ops - 1));
      return RandomExpr(rng, vars, left) - RandomExpr(rng, vars, ops - 1 - left);
    }
    case 2: {
      const int left = static_cast<int>(testing::UniformIndex(rng, 0, ops - 1));
      return RandomExpr(rng, vars, left) * RandomExpr(rng, vars, ops - 1 - left);
    }
    case 3:
      return RandomExpr(rng, vars, ops - 1) /
             (C(2.0) + Expr::Tanh(X(testing::UniformIndex(rng, 0, vars - 1))));
    case 4:
      return Expr::Exp(C(0.3) * RandomExpr(rng, vars, ops - 1));
    case 5:
      return Expr::Log(C(1.0) + Expr::Softplus(RandomExpr(rng, vars, ops - 1)));
    case 6:
      return Expr::Tanh(RandomExpr(rng, vars, ops - 1));
    case 7:
      return Expr::Sigmoid(RandomExpr(rng, vars, ops - 1));
    case 8:
      return Expr::Softplus(RandomExpr(rng, vars, ops - 1));
    default:
      return 0.5 * RandomExpr(rng, vars, ops - 1);
  }
}

TEST(GradientTest, MatchesFiniteDifferences) {
  testing::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t vars = testing::UniformIndex(rng, 1, 3);
    const Expr e = RandomExpr(rng, vars, 3);
    std::vector<double> point(vars);
    for (double& v : point) v = testing::Uniform(rng, -1.5, 1.5);
    const std::vector<double> g = Gradient(e, point);
    const std::vector<double> fd =
        testing::FiniteDifferenceGradient(e, point, 1e-6);
    for (std::size_t j = 0; j < vars; ++j) {
      EXPECT_LE(std::abs(g[j] - fd[j]), 1e-6 * std::max(1.0, std::abs(g[j])))
          << "trial " << trial << " var " << j;
    }
  }
}

TEST(EvaluateTest, Deterministic) {
  testing::Rng rng(29);
  const Expr e = RandomExpr(rng, 2, 8);
  const std::vector<double> at = {0.3, -0.4};
  EXPECT_EQ(Evaluate(e, at), Evaluate(e, at));
}

TEST(AsLinearTest, RecognizesAffine) {
  const auto form = AsLinear(C(2) * X(0) - (X(1) - C(1)) + X(0) / C(4));
  ASSERT_TRUE(form.has_value());
  ASSERT_EQ(form->terms.size(), 2u);
  EXPECT_EQ(form->terms[0].first, VarId{0});
  EXPECT_EQ(form->terms[0].second, 2.25);
  EXPECT_EQ(form->terms[1].second, -1.0);
  EXPECT_EQ(form->constant, 1.0);
}

TEST(AsLinearTest, RejectsNonlinear) {
  EXPECT_FALSE(AsLinear(X(0) * X(1)).has_value());
  EXPECT_FALSE(AsLinear(Expr::Tanh(X(0))).has_value());
  EXPECT_FALSE(AsLinear(C(1) / X(0)).has_value());
}

TEST(ReferencedVariablesTest, FirstVisitOrder) {
  EXPECT_EQ(ReferencedVariables(X(2) + X(0) * X(2)),
            (std::vector<VarId>{VarId{2}, VarId{0}}));
}

TEST(NodeCountTest, CountsSharedNodesOnce) {
  const Expr s = Expr::Tanh(X(0));
  EXPECT_EQ(NodeCount(s + s), 3u);
}

}  // namespace
}  // namespace surrogate
