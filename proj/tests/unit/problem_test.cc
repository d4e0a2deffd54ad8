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

#include "surrogate/problem.h"

#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "surrogate/status.h"

namespace surrogate {
namespace {

TEST(CountConstraintsTest, EmptyProblem) {
  EXPECT_EQ(CountConstraints(OptProblem()), ConstraintCounts{});
}

TEST(CountConstraintsTest, CountsEachKind) {
  OptProblem p;
  const VarId x = p.AddVariable("x", VarDomain::kContinuous, 0, 1);
  const VarId b = p.AddVariable("b", VarDomain::kBinary, 0, 1);
  p.AddLinearConstraint("e", {{x, 1.0}}, RowSense::kEq, 0.5);
  p.AddLinearConstraint("l", {{x, 1.0}, {b, 1.0}}, RowSense::kLe, 1.0);
  p.AddLinearConstraint("g", {{x, 1.0}}, RowSense::kGe, 0.0);
  p.AddNonlinearConstraint("n", Expr::Tanh(Expr::Variable(x)), RowSense::kLe,
                           0.9);
  p.AddComplementarity("c", Expr::Variable(x), Expr::Variable(b));
  const ConstraintCounts c = CountConstraints(p);
  EXPECT_EQ(c.variables, 2u);
  EXPECT_EQ(c.binaries, 1u);
  EXPECT_EQ(c.linear, 3u);
  EXPECT_EQ(c.linear_eq, 1u);
  EXPECT_EQ(c.linear_le, 1u);
  EXPECT_EQ(c.linear_ge, 1u);
  EXPECT_EQ(c.nonlinear, 1u);
  EXPECT_EQ(c.complementarity, 1u);
  EXPECT_EQ(c.total_rows(), 5u);
  EXPECT_TRUE(p.has_binaries());
  EXPECT_FALSE(p.is_linear());
}

TEST(OptProblemTest, RejectsBadInput) {
  OptProblem p;
  const VarId x = p.AddVariable("x[0]", VarDomain::kContinuous, 0, 1);
  EXPECT_THROW(p.AddVariable("x[0]", VarDomain::kContinuous, 0, 1), UsageError);
  EXPECT_THROW(p.AddVariable("x_0", VarDomain::kContinuous, 0, 1), UsageError);
  EXPECT_THROW(p.AddVariable("1x", VarDomain::kContinuous, 0, 1), UsageError);
  EXPECT_THROW(p.AddVariable("b", VarDomain::kBinary, 0, 2), UsageError);
  EXPECT_THROW(p.AddVariable("w", VarDomain::kContinuous, 2, 1), UsageError);
  EXPECT_THROW(p.AddLinearConstraint("obj", {{x, 1.0}}, RowSense::kLe, 0),
               UsageError);
  p.AddLinearConstraint("r", {{x, 1.0}}, RowSense::kLe, 0);
  EXPECT_THROW(p.AddLinearConstraint("r", {{x, 1.0}}, RowSense::kLe, 0),
               UsageError);
  EXPECT_THROW(p.AddLinearConstraint("s", {{VarId{7}, 1.0}}, RowSense::kLe, 0),
               UsageError);
  EXPECT_THROW(p.AddNonlinearConstraint("t", Expr::Variable(VarId{9}),
                                        RowSense::kLe, 0),
               UsageError);
  EXPECT_THROW(p.Var("nope"), UsageError);
}

TEST(OptProblemTest, LookupAndAliases) {
  OptProblem p;
  const VarId z = p.AddVariable("zp[1][0][2]", VarDomain::kContinuous, 0, 1);
  EXPECT_EQ(p.Var("zp[1][0][2]"), z);
  EXPECT_FALSE(p.FindVariable("zp_1_0_2").has_value());
  EXPECT_EQ(BracketFreeAlias("zp[1][0][2]"), "zp_1_0_2");
  EXPECT_EQ(BracketFreeAlias("c_out"), "c_out");
  EXPECT_TRUE(IsValidIdentifier("q[0][1]"));
  EXPECT_FALSE(IsValidIdentifier("a b"));
  EXPECT_FALSE(IsValidIdentifier(""));
}

TEST(RowActivityTest, Evaluates) {
  const LinearConstraint row{"r", {{VarId{0}, 2.0}, {VarId{2}, -1.0}},
                             RowSense::kLe, 0.0};
  EXPECT_EQ(RowActivity(row, std::vector<double>{1.0, 5.0, 3.0}), -1.0);
}

}  // namespace
}  // namespace surrogate
