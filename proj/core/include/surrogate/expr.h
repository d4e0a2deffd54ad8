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

// Immutable expression DAGs over problem variables, with exact evaluation and
// reverse-mode differentiation. Shared sub-expressions are evaluated once.

#ifndef SURROGATE_EXPR_H_
#define SURROGATE_EXPR_H_

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace surrogate {

struct VarId {
  std::size_t value = 0;

  auto operator<=>(const VarId&) const = default;
};

enum class ExprOp {
  kConstant,
  kVariable,
  kAdd,
  kSub,
  kMul,
  kDiv,
  kExp,
  kLog,
  kTanh,
  kSigmoid,
  kSoftplus,
  kMax,
};

bool IsUnaryFunction(ExprOp op);

class Expr {
 public:
  // The constant 0.
  Expr();

  static Expr Constant(double value);
  static Expr Variable(VarId var);
  static Expr Exp(Expr arg);
  static Expr Log(Expr arg);
  static Expr Tanh(Expr arg);
  static Expr Sigmoid(Expr arg);
  static Expr Softplus(Expr arg);
  static Expr Max(Expr a, Expr b);
  static Expr Binary(ExprOp op, Expr a, Expr b);
  static Expr Unary(ExprOp op, Expr arg);

  ExprOp op() const;
  double constant() const;  // kConstant only
  VarId variable() const;   // kVariable only
  // Unary functions use lhs() as their argument.
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool is_constant() const { return op() == ExprOp::kConstant; }
  bool is_variable() const { return op() == ExprOp::kVariable; }

  // Identity of the underlying node; equal for shared sub-expressions.
  const void* node_id() const { return node_.get(); }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator*(double c, Expr a);

// Throws UsageError when a referenced variable index is outside `assignment`.
double Evaluate(const Expr& expr, std::span<const double> assignment);

// Dense gradient, one entry per assignment slot (zero for variables the
// expression does not reference). max(a, b) sends the adjoint to a when
// a >= b.
std::vector<double> Gradient(const Expr& expr,
                             std::span<const double> assignment);

// Distinct referenced variables in first-visit order.
std::vector<VarId> ReferencedVariables(const Expr& expr);

// Number of distinct nodes in the DAG.
std::size_t NodeCount(const Expr& expr);

struct LinearForm {
  std::vector<std::pair<VarId, double>> terms;  // merged, first-seen order
  double constant = 0.0;
};

// nullopt when the expression is not affine in its variables.
std::optional<LinearForm> AsLinear(const Expr& expr);

Expr FromLinear(const LinearForm& form);

}  // namespace surrogate

#endif  // SURROGATE_EXPR_H_
