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

#include <cmath>
#include <string>
#include <unordered_map>

#include "surrogate/activation.h"
#include "surrogate/status.h"

namespace surrogate {

struct Expr::Node {
  ExprOp op = ExprOp::kConstant;
  double value = 0.0;
  VarId var;
  Expr lhs;
  Expr rhs;
};

namespace {

const Expr& ZeroExpr() {
  static const Expr* zero = new Expr(Expr::Constant(0.0));
  return *zero;
}

}  // namespace

bool IsUnaryFunction(ExprOp op) {
  switch (op) {
    case ExprOp::kExp:
    case ExprOp::kLog:
    case ExprOp::kTanh:
    case ExprOp::kSigmoid:
    case ExprOp::kSoftplus:
      return true;
    default:
      return false;
  }
}

Expr::Expr() : node_(nullptr) {}

Expr Expr::Constant(double value) {
  auto node = std::make_shared<Node>();
  node->op = ExprOp::kConstant;
  node->value = value;
  return Expr(std::move(node));
}

Expr Expr::Variable(VarId var) {
  auto node = std::make_shared<Node>();
  node->op = ExprOp::kVariable;
  node->var = var;
  return Expr(std::move(node));
}

Expr Expr::Unary(ExprOp op, Expr arg) {
  if (!IsUnaryFunction(op)) throw UsageError("not a unary function");
  auto node = std::make_shared<Node>();
  node->op = op;
  node->lhs = std::move(arg);
  return Expr(std::move(node));
}

Expr Expr::Binary(ExprOp op, Expr a, Expr b) {
  switch (op) {
    case ExprOp::kAdd:
    case ExprOp::kSub:
    case ExprOp::kMul:
    case ExprOp::kDiv:
    case ExprOp::kMax:
      break;
    default:
      throw UsageError("not a binary operator");
  }
  auto node = std::make_shared<Node>();
  node->op = op;
  node->lhs = std::move(a);
  node->rhs = std::move(b);
  return Expr(std::move(node));
}

Expr Expr::Exp(Expr arg) { return Unary(ExprOp::kExp, std::move(arg)); }
Expr Expr::Log(Expr arg) { return Unary(ExprOp::kLog, std::move(arg)); }
Expr Expr::Tanh(Expr arg) { return Unary(ExprOp::kTanh, std::move(arg)); }
Expr Expr::Sigmoid(Expr arg) { return Unary(ExprOp::kSigmoid, std::move(arg)); }
Expr Expr::Softplus(Expr arg) {
  return Unary(ExprOp::kSoftplus, std::move(arg));
}
Expr Expr::Max(Expr a, Expr b) {
  return Binary(ExprOp::kMax, std::move(a), std::move(b));
}

ExprOp Expr::op() const { return node_ ? node_->op : ExprOp::kConstant; }
double Expr::constant() const { return node_ ? node_->value : 0.0; }
VarId Expr::variable() const { return node_ ? node_->var : VarId{}; }
const Expr& Expr::lhs() const { return node_ ? node_->lhs : ZeroExpr(); }
const Expr& Expr::rhs() const { return node_ ? node_->rhs : ZeroExpr(); }

Expr operator+(Expr a, Expr b) {
  return Expr::Binary(ExprOp::kAdd, std::move(a), std::move(b));
}
Expr operator-(Expr a, Expr b) {
  return Expr::Binary(ExprOp::kSub, std::move(a), std::move(b));
}
Expr operator*(Expr a, Expr b) {
  return Expr::Binary(ExprOp::kMul, std::move(a), std::move(b));
}
Expr operator/(Expr a, Expr b) {
  return Expr::Binary(ExprOp::kDiv, std::move(a), std::move(b));
}
Expr operator*(double c, Expr a) {
  return Expr::Binary(ExprOp::kMul, Expr::Constant(c), std::move(a));
}

namespace {

// Post-order listing of distinct nodes; children precede parents.
struct Tape {
  std::vector<const Expr*> nodes;
  std::vector<int> lhs;  // tape index of the first operand, -1 if none
  std::vector<int> rhs;
};

bool HasOperands(ExprOp op) {
  return op != ExprOp::kConstant && op != ExprOp::kVariable;
}

bool IsBinary(ExprOp op) { return HasOperands(op) && !IsUnaryFunction(op); }

Tape Record(const Expr& root) {
  Tape tape;
  std::unordered_map<const void*, int> index;
  struct Frame {
    const Expr* expr;
    bool expanded;
  };
  std::vector<Frame> stack = {{&root, false}};
  while (!stack.empty()) {
    Frame frame = stack.back();
    stack.pop_back();
    const Expr& e = *frame.expr;
    if (index.contains(e.node_id())) continue;
    const ExprOp op = e.op();
    if (!frame.expanded && HasOperands(op)) {
      stack.push_back({&e, true});
      if (IsBinary(op)) stack.push_back({&e.rhs(), false});
      stack.push_back({&e.lhs(), false});
      continue;
    }
    const int id = static_cast<int>(tape.nodes.size());
    index.emplace(e.node_id(), id);
    tape.nodes.push_back(&e);
    tape.lhs.push_back(HasOperands(op) ? index.at(e.lhs().node_id()) : -1);
    tape.rhs.push_back(IsBinary(op) ? index.at(e.rhs().node_id()) : -1);
  }
  return tape;
}

std::vector<double> Forward(const Tape& tape,
                            std::span<const double> assignment) {
  std::vector<double> v(tape.nodes.size());
  for (std::size_t i = 0; i < tape.nodes.size(); ++i) {
    const Expr& e = *tape.nodes[i];
    const double a = tape.lhs[i] >= 0 ? v[tape.lhs[i]] : 0.0;
    const double b = tape.rhs[i] >= 0 ? v[tape.rhs[i]] : 0.0;
    switch (e.op()) {
      case ExprOp::kConstant:
        v[i] = e.constant();
        break;
      case ExprOp::kVariable:
        if (e.variable().value >= assignment.size()) {
          throw UsageError("expression references unbound variable " +
                           std::to_string(e.variable().value));
        }
        v[i] = assignment[e.variable().value];
        break;
      case ExprOp::kAdd:
        v[i] = a + b;
        break;
      case ExprOp::kSub:
        v[i] = a - b;
        break;
      case ExprOp::kMul:
        v[i] = a * b;
        break;
      case ExprOp::kDiv:
        v[i] = a / b;
        break;
      case ExprOp::kExp:
        v[i] = std::exp(a);
        break;
      case ExprOp::kLog:
        v[i] = std::log(a);
        break;
      case ExprOp::kTanh:
        v[i] = std::tanh(a);
        break;
      case ExprOp::kSigmoid:
        v[i] = surrogate::Sigmoid(a);
        break;
      case ExprOp::kSoftplus:
        v[i] = surrogate::Softplus(a);
        break;
      case ExprOp::kMax:
        v[i] = a >= b ? a : b;
        break;
    }
  }
  return v;
}

}  // namespace

double Evaluate(const Expr& expr, std::span<const double> assignment) {
  const Tape tape = Record(expr);
  return Forward(tape, assignment).back();
}

std::vector<double> Gradient(const Expr& expr,
                             std::span<const double> assignment) {
  const Tape tape = Record(expr);
  const std::vector<double> v = Forward(tape, assignment);
  std::vector<double> adj(tape.nodes.size(), 0.0);
  std::vector<double> grad(assignment.size(), 0.0);
  adj.back() = 1.0;
  for (std::size_t k = tape.nodes.size(); k-- > 0;) {
    const double g = adj[k];
    if (g == 0.0) continue;
    const int l = tape.lhs[k];
    const int r = tape.rhs[k];
    switch (tape.nodes[k]->op()) {
      case ExprOp::kConstant:
        break;
      case ExprOp::kVariable:
        grad[tape.nodes[k]->variable().value] += g;
        break;
      case ExprOp::kAdd:
        adj[l] += g;
        adj[r] += g;
        break;
      case ExprOp::kSub:
        adj[l] += g;
        adj[r] -= g;
        break;
      case ExprOp::kMul:
        adj[l] += g * v[r];
        adj[r] += g * v[l];
        break;
      case ExprOp::kDiv:
        adj[l] += g / v[r];
        adj[r] -= g * v[l] / (v[r] * v[r]);
        break;
      case ExprOp::kExp:
        adj[l] += g * v[k];
        break;
      case ExprOp::kLog:
        adj[l] += g / v[l];
        break;
      case ExprOp::kTanh:
        adj[l] += g * (1.0 - v[k] * v[k]);
        break;
      case ExprOp::kSigmoid:
        adj[l] += g * v[k] * (1.0 - v[k]);
        break;
      case ExprOp::kSoftplus:
        adj[l] += g * surrogate::Sigmoid(v[l]);
        break;
      case ExprOp::kMax:
        if (v[l] >= v[r]) {
          adj[l] += g;
        } else {
          adj[r] += g;
        }
        break;
    }
  }
  return grad;
}

std::vector<VarId> ReferencedVariables(const Expr& expr) {
  const Tape tape = Record(expr);
  std::vector<VarId> vars;
  std::unordered_map<std::size_t, bool> seen;
  for (const Expr* e : tape.nodes) {
    if (e->is_variable() && !seen[e->variable().value]) {
      seen[e->variable().value] = true;
      vars.push_back(e->variable());
    }
  }
  return vars;
}

std::size_t NodeCount(const Expr& expr) { return Record(expr).nodes.size(); }

namespace {

void Accumulate(LinearForm& into, const LinearForm& from, double scale) {
  for (const auto& [var, coef] : from.terms) {
    bool merged = false;
    for (auto& [v, c] : into.terms) {
      if (v == var) {
        c += scale * coef;
        merged = true;
        break;
      }
    }
    if (!merged) into.terms.emplace_back(var, scale * coef);
  }
  into.constant += scale * from.constant;
}

}  // namespace

std::optional<LinearForm> AsLinear(const Expr& expr) {
  const Tape tape = Record(expr);
  std::vector<std::optional<LinearForm>> forms(tape.nodes.size());
  for (std::size_t i = 0; i < tape.nodes.size(); ++i) {
    const Expr& e = *tape.nodes[i];
    const int l = tape.lhs[i];
    const int r = tape.rhs[i];
    auto operand = [&](int k) -> const std::optional<LinearForm>& {
      return forms[k];
    };
    auto constant_of = [&](int k) -> std::optional<double> {
      const auto& f = forms[k];
      if (f && f->terms.empty()) return f->constant;
      return std::nullopt;
    };
    switch (e.op()) {
      case ExprOp::kConstant:
        forms[i] = LinearForm{{}, e.constant()};
        break;
      case ExprOp::kVariable:
        forms[i] = LinearForm{{{e.variable(), 1.0}}, 0.0};
        break;
      case ExprOp::kAdd:
      case ExprOp::kSub:
        if (operand(l) && operand(r)) {
          LinearForm f = *operand(l);
          Accumulate(f, *operand(r), e.op() == ExprOp::kAdd ? 1.0 : -1.0);
          forms[i] = std::move(f);
        }
        break;
      case ExprOp::kMul:
        if (const auto c = constant_of(l); c && operand(r)) {
          LinearForm f;
          Accumulate(f, *operand(r), *c);
          forms[i] = std::move(f);
        } else if (const auto c2 = constant_of(r); c2 && operand(l)) {
          LinearForm f;
          Accumulate(f, *operand(l), *c2);
          forms[i] = std::move(f);
        }
        break;
      case ExprOp::kDiv:
        if (const auto c = constant_of(r); c && *c != 0.0 && operand(l)) {
          LinearForm f = *operand(l);
          for (auto& term : f.terms) term.second /= *c;
          f.constant /= *c;
          forms[i] = std::move(f);
        }
        break;
      default:
        if (const auto c = constant_of(l); c && IsUnaryFunction(e.op())) {
          forms[i] = LinearForm{{}, Evaluate(e, {})};
        }
        break;
    }
  }
  return forms.back();
}

Expr FromLinear(const LinearForm& form) {
  Expr out;
  bool first = true;
  for (const auto& [var, coef] : form.terms) {
    Expr term = coef == 1.0 ? Expr::Variable(var)
                            : coef * Expr::Variable(var);
    out = first ? term : out + term;
    first = false;
  }
  if (first) return Expr::Constant(form.constant);
  if (form.constant != 0.0) out = out + Expr::Constant(form.constant);
  return out;
}

}  // namespace surrogate
