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

#include "surrogate/formulation.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "surrogate/status.h"

namespace surrogate {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string Name(std::string_view base, std::initializer_list<std::size_t> idx) {
  std::string out(base);
  for (std::size_t i : idx) out += "[" + std::to_string(i) + "]";
  return out;
}

enum class NeuronMode { kLinear, kSmooth, kInactive, kActive, kUnstable };

NeuronMode Classify(Activation activation, Interval pre) {
  switch (activation) {
    case Activation::kLinear:
      return NeuronMode::kLinear;
    case Activation::kRelu:
      if (pre.ub <= 0.0) return NeuronMode::kInactive;
      if (pre.lb >= 0.0) return NeuronMode::kActive;
      return NeuronMode::kUnstable;
    default:
      return NeuronMode::kSmooth;
  }
}

Expr ActivationExpr(Activation activation, Expr arg) {
  switch (activation) {
    case Activation::kSigmoid:
      return Expr::Sigmoid(std::move(arg));
    case Activation::kTanh:
      return Expr::Tanh(std::move(arg));
    case Activation::kSoftplus:
      return Expr::Softplus(std::move(arg));
    case Activation::kRelu:
      return Expr::Max(std::move(arg), Expr::Constant(0.0));
    case Activation::kLinear:
      break;
  }
  return arg;
}

std::vector<double> DenseRow(const SparseAffine& map, std::size_t i) {
  std::vector<double> w(map.in_dim, 0.0);
  for (const AffineTerm& t : map.rows[i]) w[t.index] += t.weight;
  return w;
}

// Appends -w_j * prev_j terms, i.e. moves the affine sum to the left side.
void AppendAffine(std::vector<LinearTerm>& terms,
                  std::span<const AffineTerm> row,
                  std::span<const VarId> prev, double sign) {
  for (const AffineTerm& t : row) {
    if (t.weight != 0.0) terms.push_back({prev[t.index], sign * t.weight});
  }
}

class NetworkCompiler {
 public:
  NetworkCompiler(const NetworkDefinition& net, const FormulationKind& kind)
      : net_(net), kind_(kind), bounds_(PropagateBounds(net)) {}

  OptProblem Compile() {
    if (kind_.type == FormulationType::kReducedSpaceSmooth) {
      CompileReduced();
    } else {
      CompileFullSpace();
    }
    return std::move(p_);
  }

 private:
  void CompileFullSpace() {
    std::vector<VarId> prev = AddInputs();
    for (std::size_t l = 0; l < net_.layers.size(); ++l) {
      const Layer& layer = net_.layers[l];
      const SparseAffine map = LayerAffine(layer);
      const LayerBounds& lb = bounds_.layers[l];
      std::vector<VarId> current;
      current.reserve(map.out_dim());
      for (std::size_t i = 0; i < map.out_dim(); ++i) {
        current.push_back(
            AddNeuron(l, i, layer.activation, map, lb.pre[i], lb.post[i], prev));
      }
      prev = std::move(current);
    }
    AddOutputs(prev);
  }

  std::vector<VarId> AddInputs() {
    std::vector<VarId> xs;
    for (std::size_t i = 0; i < net_.input_size; ++i) {
      const Interval b = net_.input_bounds[i];
      const VarId x = p_.AddVariable(Name("x", {i}), VarDomain::kContinuous,
                                     b.lb, b.ub);
      p_.MarkInput(x);
      if (!net_.scaling) {
        xs.push_back(x);
        continue;
      }
      const Interval sb = bounds_.input[i];
      const VarId s = p_.AddVariable(Name("xs", {i}), VarDomain::kContinuous,
                                     sb.lb, sb.ub);
      // x - factor * xs = offset
      p_.AddLinearConstraint(Name("c_scale_in", {i}),
                             {{x, 1.0}, {s, -net_.scaling->input_factor[i]}},
                             RowSense::kEq, net_.scaling->input_offset[i]);
      xs.push_back(s);
    }
    return xs;
  }

  void AddOutputs(std::span<const VarId> last) {
    for (std::size_t j = 0; j < last.size(); ++j) {
      if (!net_.scaling) {
        p_.MarkOutput(last[j]);
        continue;
      }
      const Interval b = bounds_.output[j];
      const VarId y = p_.AddVariable(Name("y", {j}), VarDomain::kContinuous,
                                     b.lb, b.ub);
      p_.AddLinearConstraint(Name("c_scale_out", {j}),
                             {{y, 1.0}, {last[j], -net_.scaling->output_factor[j]}},
                             RowSense::kEq, net_.scaling->output_offset[j]);
      p_.MarkOutput(y);
    }
  }

  // z - sum w prev = b
  void AddAffineEquality(const std::string& name, VarId target,
                         std::span<const AffineTerm> row, double bias,
                         std::span<const VarId> prev) {
    std::vector<LinearTerm> terms = {{target, 1.0}};
    AppendAffine(terms, row, prev, -1.0);
    p_.AddLinearConstraint(name, std::move(terms), RowSense::kEq, bias);
  }

  VarId AddNeuron(std::size_t l, std::size_t i, Activation activation,
                  const SparseAffine& map, Interval pre, Interval post,
                  std::span<const VarId> prev) {
    const std::string post_name = PostActivationName(net_, l, i);
    const auto& row = map.rows[i];
    const double bias = map.bias[i];
    switch (Classify(activation, pre)) {
      case NeuronMode::kLinear:
      case NeuronMode::kActive: {
        const VarId z = p_.AddVariable(post_name, VarDomain::kContinuous,
                                       post.lb, post.ub);
        AddAffineEquality(Name("c_pre", {l, i}), z, row, bias, prev);
        return z;
      }
      case NeuronMode::kInactive:
        return p_.AddVariable(post_name, VarDomain::kContinuous, 0.0, 0.0);
      case NeuronMode::kSmooth: {
        const VarId zhat = p_.AddVariable(
            Name("zhat", {l, i}), VarDomain::kContinuous, pre.lb, pre.ub);
        const VarId z = p_.AddVariable(post_name, VarDomain::kContinuous,
                                       post.lb, post.ub);
        AddAffineEquality(Name("c_pre", {l, i}), zhat, row, bias, prev);
        p_.AddNonlinearConstraint(
            Name("c_act", {l, i}),
            Expr::Variable(z) - ActivationExpr(activation, Expr::Variable(zhat)),
            RowSense::kEq, 0.0);
        return z;
      }
      case NeuronMode::kUnstable:
        break;
    }
    switch (kind_.type) {
      case FormulationType::kReluBigM:
        return AddBigM(l, i, post_name, row, bias, pre, post, prev);
      case FormulationType::kReluComplementarity:
        return AddComplementarity(l, i, post_name, row, bias, pre, post, prev);
      case FormulationType::kReluPartition:
        return AddPartition(l, i, post_name, map, post, prev);
      default:
        throw FormulationError("internal: ReLU neuron in a smooth formulation");
    }
  }

  VarId AddBigM(std::size_t l, std::size_t i, const std::string& post_name,
                std::span<const AffineTerm> row, double bias, Interval pre,
                Interval post, std::span<const VarId> prev) {
    const VarId zhat = p_.AddVariable(Name("zhat", {l, i}),
                                      VarDomain::kContinuous, pre.lb, pre.ub);
    const VarId z = p_.AddVariable(post_name, VarDomain::kContinuous, post.lb,
                                   post.ub);
    const VarId q = p_.AddVariable(Name("q", {l, i}), VarDomain::kBinary, 0, 1);
    AddAffineEquality(Name("c_pre", {l, i}), zhat, row, bias, prev);
    p_.AddLinearConstraint(Name("c_bigm_nonneg", {l, i}), {{z, 1.0}},
                           RowSense::kGe, 0.0);
    p_.AddLinearConstraint(Name("c_bigm_pre", {l, i}), {{z, 1.0}, {zhat, -1.0}},
                           RowSense::kGe, 0.0);
    // z <= zhat - lb * (1 - q)
    p_.AddLinearConstraint(Name("c_bigm_off", {l, i}),
                           {{z, 1.0}, {zhat, -1.0}, {q, -pre.lb}},
                           RowSense::kLe, -pre.lb);
    // z <= ub * q
    p_.AddLinearConstraint(Name("c_bigm_on", {l, i}), {{z, 1.0}, {q, -pre.ub}},
                           RowSense::kLe, 0.0);
    return z;
  }

  VarId AddComplementarity(std::size_t l, std::size_t i,
                           const std::string& post_name,
                           std::span<const AffineTerm> row, double bias,
                           Interval pre, Interval post,
                           std::span<const VarId> prev) {
    const VarId zhat = p_.AddVariable(Name("zhat", {l, i}),
                                      VarDomain::kContinuous, pre.lb, pre.ub);
    const VarId z = p_.AddVariable(post_name, VarDomain::kContinuous, post.lb,
                                   post.ub);
    AddAffineEquality(Name("c_pre", {l, i}), zhat, row, bias, prev);
    p_.AddLinearConstraint(Name("c_compl_nonneg", {l, i}), {{z, 1.0}},
                           RowSense::kGe, 0.0);
    p_.AddLinearConstraint(Name("c_compl_pre", {l, i}),
                           {{z, 1.0}, {zhat, -1.0}}, RowSense::kGe, 0.0);
    p_.AddComplementarity(Name("cc", {l, i}), Expr::Variable(z),
                          Expr::Variable(z) - Expr::Variable(zhat));
    return z;
  }

  VarId AddPartition(std::size_t l, std::size_t i, const std::string& post_name,
                     const SparseAffine& map, Interval post,
                     std::span<const VarId> prev) {
    const std::vector<double> w = DenseRow(map, i);
    const double b = map.bias[i];
    const auto classes = DefaultPartition(w, kind_.partitions);
    const std::vector<Interval> incoming =
        l == 0 ? bounds_.input : bounds_.layers[l - 1].post;
    const std::vector<Interval> sums = PartitionSumBounds(w, incoming, classes);

    const VarId z = p_.AddVariable(post_name, VarDomain::kContinuous, post.lb,
                                   post.ub);
    const VarId q = p_.AddVariable(Name("q", {l, i}), VarDomain::kBinary, 0, 1);
    std::vector<VarId> zp;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      zp.push_back(p_.AddVariable(Name("zp", {l, i, k}), VarDomain::kContinuous,
                                  std::min(0.0, sums[k].lb),
                                  std::max(0.0, sums[k].ub)));
    }
    auto v_terms = [&](std::size_t k, double sign) {
      std::vector<LinearTerm> terms;
      for (std::size_t j : classes[k]) {
        if (w[j] != 0.0) terms.push_back({prev[j], sign * w[j]});
      }
      return terms;
    };

    // z = sum zp + q b
    std::vector<LinearTerm> out = {{z, 1.0}};
    for (VarId v : zp) out.push_back({v, -1.0});
    out.push_back({q, -b});
    p_.AddLinearConstraint(Name("c_part_out", {l, i}), std::move(out),
                           RowSense::kEq, 0.0);
    // sum zp + q b >= 0
    std::vector<LinearTerm> active;
    for (VarId v : zp) active.push_back({v, 1.0});
    active.push_back({q, b});
    p_.AddLinearConstraint(Name("c_part_act", {l, i}), std::move(active),
                           RowSense::kGe, 0.0);
    // sum (v_k - zp_k) + (1 - q) b <= 0
    std::vector<LinearTerm> inactive;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      auto t = v_terms(k, 1.0);
      inactive.insert(inactive.end(), t.begin(), t.end());
      inactive.push_back({zp[k], -1.0});
    }
    inactive.push_back({q, -b});
    p_.AddLinearConstraint(Name("c_part_inact", {l, i}), std::move(inactive),
                           RowSense::kLe, -b);
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const Interval s = sums[k];
      p_.AddLinearConstraint(Name("c_part_zp_lb", {l, i, k}),
                             {{zp[k], 1.0}, {q, -s.lb}}, RowSense::kGe, 0.0);
      p_.AddLinearConstraint(Name("c_part_zp_ub", {l, i, k}),
                             {{zp[k], 1.0}, {q, -s.ub}}, RowSense::kLe, 0.0);
      // (1 - q) L <= v - zp <= (1 - q) U
      auto lo = v_terms(k, 1.0);
      lo.push_back({zp[k], -1.0});
      lo.push_back({q, s.lb});
      p_.AddLinearConstraint(Name("c_part_rest_lb", {l, i, k}), std::move(lo),
                             RowSense::kGe, s.lb);
      auto hi = v_terms(k, 1.0);
      hi.push_back({zp[k], -1.0});
      hi.push_back({q, s.ub});
      p_.AddLinearConstraint(Name("c_part_rest_ub", {l, i, k}), std::move(hi),
                             RowSense::kLe, s.ub);
    }
    return z;
  }

  void CompileReduced() {
    std::vector<Expr> prev;
    for (std::size_t i = 0; i < net_.input_size; ++i) {
      const Interval b = net_.input_bounds[i];
      const VarId x = p_.AddVariable(Name("x", {i}), VarDomain::kContinuous,
                                     b.lb, b.ub);
      p_.MarkInput(x);
      Expr e = Expr::Variable(x);
      if (net_.scaling) {
        e = (e - Expr::Constant(net_.scaling->input_offset[i])) /
            Expr::Constant(net_.scaling->input_factor[i]);
      }
      prev.push_back(std::move(e));
    }
    for (const Layer& layer : net_.layers) {
      const SparseAffine map = LayerAffine(layer);
      std::vector<Expr> current;
      current.reserve(map.out_dim());
      for (std::size_t i = 0; i < map.out_dim(); ++i) {
        std::optional<Expr> sum;
        for (const AffineTerm& t : map.rows[i]) {
          if (t.weight == 0.0) continue;
          Expr term = t.weight == 1.0 ? prev[t.index] : t.weight * prev[t.index];
          sum = sum ? *sum + term : term;
        }
        Expr pre = sum ? *sum : Expr::Constant(map.bias[i]);
        if (sum && map.bias[i] != 0.0) pre = pre + Expr::Constant(map.bias[i]);
        current.push_back(ActivationExpr(layer.activation, std::move(pre)));
      }
      prev = std::move(current);
    }
    for (std::size_t j = 0; j < prev.size(); ++j) {
      const Interval b = bounds_.output[j];
      const VarId y = p_.AddVariable(Name("y", {j}), VarDomain::kContinuous,
                                     b.lb, b.ub);
      Expr out = prev[j];
      if (net_.scaling) {
        out = net_.scaling->output_factor[j] * out +
              Expr::Constant(net_.scaling->output_offset[j]);
      }
      p_.AddNonlinearConstraint(Name("c_out", {j}), Expr::Variable(y) - out,
                                RowSense::kEq, 0.0);
      p_.MarkOutput(y);
    }
  }

  const NetworkDefinition& net_;
  FormulationKind kind_;
  IntervalBounds bounds_;
  OptProblem p_;
};

}  // namespace

std::string_view FormulationName(FormulationType type) {
  switch (type) {
    case FormulationType::kFullSpaceSmooth:
      return "fullspace";
    case FormulationType::kReducedSpaceSmooth:
      return "reducedspace";
    case FormulationType::kReluBigM:
      return "bigm";
    case FormulationType::kReluComplementarity:
      return "complementarity";
    case FormulationType::kReluPartition:
      return "partition";
    case FormulationType::kGbtBigM:
      return "gbt";
  }
  return "bigm";
}

std::optional<FormulationType> ParseFormulationName(std::string_view name) {
  for (FormulationType t :
       {FormulationType::kFullSpaceSmooth, FormulationType::kReducedSpaceSmooth,
        FormulationType::kReluBigM, FormulationType::kReluComplementarity,
        FormulationType::kReluPartition, FormulationType::kGbtBigM}) {
    if (FormulationName(t) == name) return t;
  }
  return std::nullopt;
}

bool IsReluFormulation(FormulationType type) {
  return type == FormulationType::kReluBigM ||
         type == FormulationType::kReluComplementarity ||
         type == FormulationType::kReluPartition;
}

void CheckCompatible(const NetworkDefinition& net, const FormulationKind& kind) {
  if (kind.type == FormulationType::kGbtBigM) {
    throw FormulationError("gbt formulation requires a tree ensemble, not a "
                           "network");
  }
  if (net.layers.empty()) throw FormulationError("network has no layers");
  const bool relu = IsReluFormulation(kind.type);
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const Activation a = net.layers[l].activation;
    if (relu && a != Activation::kLinear && a != Activation::kRelu) {
      throw FormulationError(
          "layer " + std::to_string(l) + ": activation '" +
          std::string(ActivationName(a)) + "' is not supported by the " +
          std::string(FormulationName(kind.type)) +
          " formulation (linear or relu only)");
    }
    if (!relu && a == Activation::kRelu) {
      throw FormulationError(
          "layer " + std::to_string(l) + ": relu is not supported by the " +
          std::string(FormulationName(kind.type)) +
          " formulation (linear, sigmoid, tanh or softplus only)");
    }
    if (kind.type == FormulationType::kReluPartition &&
        !net.layers[l].is_dense()) {
      throw FormulationError("layer " + std::to_string(l) +
                             ": partition formulation supports dense layers "
                             "only");
    }
  }
  if (kind.type == FormulationType::kReluPartition && kind.partitions == 0) {
    throw FormulationError("partition count must be at least 1");
  }
}

std::string PostActivationName(const NetworkDefinition& net, std::size_t layer,
                               std::size_t neuron) {
  if (layer + 1 == net.layers.size()) {
    return Name(net.scaling ? "ys" : "y", {neuron});
  }
  return Name("z", {layer, neuron});
}

OptProblem Formulate(const NetworkDefinition& net, const FormulationKind& kind) {
  try {
    ValidateNetwork(net);
    RequireFiniteInputBounds(net);
  } catch (const ModelError& e) {
    throw FormulationError(e.what());
  }
  CheckCompatible(net, kind);
  return NetworkCompiler(net, kind).Compile();
}

std::vector<double> LiftForwardPass(const NetworkDefinition& net,
                                    const FormulationKind& kind,
                                    const OptProblem& problem,
                                    std::span<const double> x) {
  const ForwardTrace trace = NnForwardTrace(net, x);
  std::vector<double> a(problem.num_variables(), 0.0);
  auto set = [&](const std::string& name, double value) {
    if (const auto v = problem.FindVariable(name)) a[v->value] = value;
  };
  for (std::size_t i = 0; i < net.input_size; ++i) {
    set(Name("x", {i}), x[i]);
    set(Name("xs", {i}), trace.scaled_input[i]);
  }
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const std::vector<double>& pre = trace.pre[l];
    const std::vector<double>& in =
        l == 0 ? trace.scaled_input : trace.post[l - 1];
    const SparseAffine map = LayerAffine(net.layers[l]);
    for (std::size_t i = 0; i < pre.size(); ++i) {
      set(PostActivationName(net, l, i), trace.post[l][i]);
      set(Name("zhat", {l, i}), pre[i]);
      const bool active = pre[i] > 0.0;
      set(Name("q", {l, i}), active ? 1.0 : 0.0);
      if (kind.type != FormulationType::kReluPartition) continue;
      if (!problem.FindVariable(Name("zp", {l, i, 0}))) continue;
      const std::vector<double> w = DenseRow(map, i);
      const auto classes = DefaultPartition(w, kind.partitions);
      for (std::size_t k = 0; k < classes.size(); ++k) {
        double v = 0.0;
        for (std::size_t j : classes[k]) v += w[j] * in[j];
        set(Name("zp", {l, i, k}), active ? v : 0.0);
      }
    }
  }
  for (std::size_t j = 0; j < trace.output.size(); ++j) {
    set(Name("y", {j}), trace.output[j]);
  }
  return a;
}

GbtFormulation FormulateGbt(const TreeEnsemble& ensemble,
                            const GbtOptions& options) {
  try {
    ValidateEnsemble(ensemble);
  } catch (const ModelError& e) {
    throw FormulationError(e.what());
  }
  if (!(options.epsilon >= 0.0) || !std::isfinite(options.epsilon)) {
    throw FormulationError("epsilon must be a finite non-negative number");
  }
  GbtFormulation out;
  OptProblem& p = out.problem;
  const std::size_t d = ensemble.n_features;

  out.thresholds.assign(d, {});
  bool any_split = false;
  for (const Tree& tree : ensemble.trees) {
    for (const TreeNode& node : tree.nodes) {
      if (const auto* s = std::get_if<TreeSplit>(&node)) {
        out.thresholds[s->feature].push_back(s->threshold);
        any_split = true;
      }
    }
  }
  if (!any_split) {
    out.warnings.push_back("ensemble has no splits; output is constant");
  }
  for (auto& t : out.thresholds) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
  }

  std::vector<VarId> x;
  for (std::size_t f = 0; f < d; ++f) {
    const Interval b = ensemble.feature_bounds[f];
    x.push_back(
        p.AddVariable(Name("x", {f}), VarDomain::kContinuous, b.lb, b.ub));
    p.MarkInput(x.back());
  }
  std::vector<std::vector<VarId>> yb(d);
  for (std::size_t f = 0; f < d; ++f) {
    const Interval b = ensemble.feature_bounds[f];
    for (std::size_t j = 0; j < out.thresholds[f].size(); ++j) {
      const double v = out.thresholds[f][j];
      double lo = 0.0;
      double hi = 1.0;
      if (v >= b.ub) {
        lo = 1.0;  // every feasible x goes left
        out.warnings.push_back("feature " + std::to_string(f) + " threshold " +
                               std::to_string(v) +
                               " is at or above the upper bound; split fixed "
                               "to the left branch");
      } else if (v < b.lb) {
        hi = 0.0;  // every feasible x goes right
        out.warnings.push_back("feature " + std::to_string(f) + " threshold " +
                               std::to_string(v) +
                               " is below the lower bound; split fixed to the "
                               "right branch");
      }
      yb[f].push_back(
          p.AddVariable(Name("yb", {f, j}), VarDomain::kBinary, lo, hi));
    }
  }

  double y_lo = ensemble.base_score;
  double y_hi = ensemble.base_score;
  std::vector<std::vector<VarId>> zl(ensemble.trees.size());
  std::vector<std::vector<std::size_t>> leaf_ids(ensemble.trees.size());
  for (std::size_t t = 0; t < ensemble.trees.size(); ++t) {
    const Tree& tree = ensemble.trees[t];
    leaf_ids[t] = LeavesUnder(tree, 0);
    double lo = kInf;
    double hi = -kInf;
    for (std::size_t l = 0; l < leaf_ids[t].size(); ++l) {
      zl[t].push_back(p.AddVariable(Name("zl", {t, l}), VarDomain::kContinuous,
                                    0.0, 1.0));
      const double value = std::get<TreeLeaf>(tree.nodes[leaf_ids[t][l]]).value;
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    y_lo += lo;
    y_hi += hi;
  }
  const VarId y =
      p.AddVariable(Name("y", {0}), VarDomain::kContinuous, y_lo, y_hi);
  p.MarkOutput(y);

  for (std::size_t t = 0; t < ensemble.trees.size(); ++t) {
    const Tree& tree = ensemble.trees[t];
    std::vector<LinearTerm> one;
    for (VarId v : zl[t]) one.push_back({v, 1.0});
    p.AddLinearConstraint(Name("c_tree", {t}), std::move(one), RowSense::kEq,
                          1.0);
    auto leaf_var = [&](std::size_t node) {
      const auto it =
          std::lower_bound(leaf_ids[t].begin(), leaf_ids[t].end(), node);
      return zl[t][static_cast<std::size_t>(it - leaf_ids[t].begin())];
    };
    for (std::size_t s = 0; s < tree.nodes.size(); ++s) {
      const auto* split = std::get_if<TreeSplit>(&tree.nodes[s]);
      if (split == nullptr) continue;
      const auto& ts = out.thresholds[split->feature];
      const std::size_t j = static_cast<std::size_t>(
          std::lower_bound(ts.begin(), ts.end(), split->threshold) - ts.begin());
      const VarId b = yb[split->feature][j];
      std::vector<LinearTerm> left;
      for (std::size_t leaf : LeavesUnder(tree, split->left)) {
        left.push_back({leaf_var(leaf), 1.0});
      }
      left.push_back({b, -1.0});
      p.AddLinearConstraint(Name("c_left", {t, s}), std::move(left),
                            RowSense::kLe, 0.0);
      std::vector<LinearTerm> right;
      for (std::size_t leaf : LeavesUnder(tree, split->right)) {
        right.push_back({leaf_var(leaf), 1.0});
      }
      right.push_back({b, 1.0});
      p.AddLinearConstraint(Name("c_right", {t, s}), std::move(right),
                            RowSense::kLe, 1.0);
    }
  }

  for (std::size_t f = 0; f < d; ++f) {
    const auto& ts = out.thresholds[f];
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
      p.AddLinearConstraint(Name("c_order", {f, j}),
                            {{yb[f][j], 1.0}, {yb[f][j + 1], -1.0}},
                            RowSense::kLe, 0.0);
    }
    const Interval b = ensemble.feature_bounds[f];
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const double v = ts[j];
      if (v >= b.ub || v < b.lb) continue;
      // yb = 1  =>  x <= v
      p.AddLinearConstraint(Name("c_link_le", {f, j}),
                            {{x[f], 1.0}, {yb[f][j], b.ub - v}}, RowSense::kLe,
                            b.ub);
      // yb = 0  =>  x >= v + epsilon
      const double right = v + options.epsilon;
      p.AddLinearConstraint(Name("c_link_ge", {f, j}),
                            {{x[f], 1.0}, {yb[f][j], right - b.lb}},
                            RowSense::kGe, right);
    }
  }

  std::vector<LinearTerm> output = {{y, 1.0}};
  for (std::size_t t = 0; t < ensemble.trees.size(); ++t) {
    const Tree& tree = ensemble.trees[t];
    for (std::size_t l = 0; l < leaf_ids[t].size(); ++l) {
      output.push_back(
          {zl[t][l], -std::get<TreeLeaf>(tree.nodes[leaf_ids[t][l]]).value});
    }
  }
  p.AddLinearConstraint("c_out", std::move(output), RowSense::kEq,
                        ensemble.base_score);
  return out;
}

std::vector<double> LiftGbtPoint(const TreeEnsemble& ensemble,
                                 const GbtFormulation& formulation,
                                 std::span<const double> x) {
  const OptProblem& p = formulation.problem;
  std::vector<double> a(p.num_variables(), 0.0);
  for (std::size_t f = 0; f < ensemble.n_features; ++f) {
    a[p.Var(Name("x", {f})).value] = x[f];
    const auto& ts = formulation.thresholds[f];
    for (std::size_t j = 0; j < ts.size(); ++j) {
      a[p.Var(Name("yb", {f, j})).value] = x[f] <= ts[j] ? 1.0 : 0.0;
    }
  }
  for (std::size_t t = 0; t < ensemble.trees.size(); ++t) {
    const std::vector<std::size_t> leaves = LeavesUnder(ensemble.trees[t], 0);
    const std::size_t reached = ReachedLeaf(ensemble.trees[t], x);
    const auto it = std::lower_bound(leaves.begin(), leaves.end(), reached);
    a[p.Var(Name("zl", {t, static_cast<std::size_t>(it - leaves.begin())}))
          .value] = 1.0;
  }
  a[p.Var("y[0]").value] = GbtPredict(ensemble, x);
  return a;
}

ObjectiveSpec ParseObjectiveSpec(std::string_view text, ObjectiveSense sense) {
  ObjectiveSpec spec;
  spec.sense = sense;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  };
  auto fail = [&](const std::string& what) -> ObjectiveSpec {
    throw UsageError("objective '" + std::string(text) + "': " + what);
  };
  skip();
  if (pos == text.size()) return fail("empty objective");
  bool first = true;
  while (pos < text.size()) {
    double sign = 1.0;
    skip();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (!first) {
      return fail("expected '+' or '-' at offset " + std::to_string(pos));
    }
    skip();
    double coef = 1.0;
    if (pos < text.size() &&
        (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      const char* begin = text.data() + pos;
      const auto [ptr, ec] =
          std::from_chars(begin, text.data() + text.size(), coef);
      if (ec != std::errc()) return fail("bad coefficient");
      pos += static_cast<std::size_t>(ptr - begin);
      skip();
      if (pos >= text.size() || text[pos] != '*') return fail("expected '*'");
      ++pos;
      skip();
    }
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_' || text[pos] == '[' || text[pos] == ']')) {
      ++pos;
    }
    const std::string name(text.substr(start, pos - start));
    if (!IsValidIdentifier(name)) return fail("expected a variable name");
    spec.terms.emplace_back(name, sign * coef);
    skip();
    first = false;
  }
  return spec;
}

OptProblem LinkObjective(OptProblem problem, const ObjectiveSpec& spec) {
  LinearForm form;
  for (const auto& [name, coef] : spec.terms) {
    const auto var = problem.FindVariable(name);
    const auto in_block = [&](const std::vector<VarId>& vars) {
      return var && std::find(vars.begin(), vars.end(), *var) != vars.end();
    };
    if (!in_block(problem.input_vars()) && !in_block(problem.output_vars())) {
      throw UsageError("objective references '" + name +
                       "', which is not an input or output of the block");
    }
    form.terms.emplace_back(*var, coef);
  }
  problem.SetObjective({spec.sense, FromLinear(form)});
  return problem;
}

NetworkDefinition RestrictInputBox(const NetworkDefinition& net,
                                   std::span<const double> x0, double radius) {
  if (x0.size() != net.input_size) {
    throw UsageError("input point has " + std::to_string(x0.size()) +
                     " entries, network expects " +
                     std::to_string(net.input_size));
  }
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw UsageError("radius must be finite and non-negative");
  }
  NetworkDefinition out = net;
  for (std::size_t i = 0; i < net.input_size; ++i) {
    Interval& b = out.input_bounds[i];
    if (x0[i] < b.lb || x0[i] > b.ub) {
      throw UsageError("input point coordinate " + std::to_string(i) +
                       " lies outside the network's input bounds");
    }
    b.lb = std::max(b.lb, x0[i] - radius);
    b.ub = std::min(b.ub, x0[i] + radius);
  }
  return out;
}

OptProblem AdversarialProblem(const NetworkDefinition& net,
                              const AdversarialQuery& query) {
  const std::size_t classes = net.OutputSize();
  if (query.true_label >= classes || query.target_label >= classes) {
    throw UsageError("label out of range for " + std::to_string(classes) +
                     " outputs");
  }
  if (query.true_label == query.target_label) {
    throw UsageError("true and target labels must differ");
  }
  const NetworkDefinition box = RestrictInputBox(net, query.x0, query.radius);
  OptProblem p = Formulate(box, {FormulationType::kReluBigM, 2});
  ObjectiveSpec spec;
  spec.sense = ObjectiveSense::kMaximize;
  spec.terms = {{Name("y", {query.target_label}), 1.0},
                {Name("y", {query.true_label}), -1.0}};
  return LinkObjective(std::move(p), spec);
}

}  // namespace surrogate
