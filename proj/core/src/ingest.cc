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

#include "surrogate/ingest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "surrogate/status.h"

namespace surrogate {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

int LineOfByte(std::string_view text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(),
                                         text.begin() + static_cast<long>(end),
                                         '\n'));
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // nlohmann reports the byte just past the failure; 0 means unknown.
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    throw ParseError("", e.what(), LineOfByte(text, byte));
  } catch (const Json::out_of_range& e) {
    throw ParseError("", e.what());
  }
}

std::string Field(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string Item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& Require(const Json& obj, std::string_view key,
                    const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(Field(path, key), "missing required field");
  }
  return *it;
}

void RequireObject(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
}

const Json& RequireArray(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected a list");
  return j;
}

double Number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "number is not finite");
  return v;
}

std::size_t Count(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0 && v == std::floor(v) && v < 1e15) {
      return static_cast<std::size_t>(v);
    }
  }
  throw ParseError(path, "expected a non-negative integer");
}

std::vector<double> Vector(const Json& j, const std::string& path) {
  RequireArray(j, path);
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(Number(j[i], Item(path, i)));
  }
  return out;
}

std::vector<Interval> Bounds(const Json& j, const std::string& path) {
  RequireArray(j, path);
  std::vector<Interval> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = Item(path, i);
    if (!j[i].is_array() || j[i].size() != 2) {
      throw ParseError(p, "expected a [lb, ub] pair");
    }
    Interval b{Number(j[i][0], Item(p, 0)), Number(j[i][1], Item(p, 1))};
    if (b.lb > b.ub) throw ParseError(p, "lb > ub");
    out.push_back(b);
  }
  return out;
}

void WarnUnknownKeys(const Json& obj, const std::set<std::string>& known,
                     const std::string& path,
                     std::vector<std::string>& warnings) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) {
      warnings.push_back("ignoring unknown field '" + Field(path, key) + "'");
    }
  }
}

void CheckFormatVersion(const Json& root, std::vector<std::string>& warnings) {
  const auto it = root.find("format_version");
  if (it == root.end()) {
    warnings.push_back("format_version missing; assuming 1");
    return;
  }
  if (Count(*it, "format_version") != 1) {
    throw ParseError("format_version", "unsupported version (expected 1)");
  }
}

Activation ParseActivationField(const Json& layer, const std::string& path) {
  const auto it = layer.find("activation");
  if (it == layer.end()) return Activation::kLinear;
  const std::string p = Field(path, "activation");
  if (!it->is_string()) throw ParseError(p, "expected a string");
  const auto a = ParseActivation(it->get<std::string>());
  if (!a) {
    throw ParseError(p, "unknown activation '" + it->get<std::string>() +
                            "' (expected linear, relu, sigmoid, tanh or "
                            "softplus)");
  }
  return *a;
}

DenseLayer ParseDense(const Json& layer, const std::string& path) {
  const std::string wp = Field(path, "weights");
  const Json& w = RequireArray(Require(layer, "weights", path), wp);
  DenseLayer d;
  d.out_size = w.size();
  if (d.out_size == 0) throw ParseError(wp, "weight matrix has no rows");
  for (std::size_t i = 0; i < w.size(); ++i) {
    std::vector<double> row = Vector(w[i], Item(wp, i));
    if (i == 0) {
      d.in_size = row.size();
      if (d.in_size == 0) throw ParseError(Item(wp, i), "empty weight row");
    } else if (row.size() != d.in_size) {
      throw ParseError(Item(wp, i), "ragged weight matrix (row has " +
                                        std::to_string(row.size()) +
                                        " entries, expected " +
                                        std::to_string(d.in_size) + ")");
    }
    d.weights.insert(d.weights.end(), row.begin(), row.end());
  }
  d.bias = Vector(Require(layer, "bias", path), Field(path, "bias"));
  return d;
}

Conv2dLayer ParseConv(const Json& layer, const std::string& path) {
  Conv2dLayer c;
  const std::string kp = Field(path, "kernel");
  const Json& k = RequireArray(Require(layer, "kernel", path), kp);
  c.out_channels = k.size();
  if (c.out_channels == 0) throw ParseError(kp, "kernel is empty");
  for (std::size_t oc = 0; oc < k.size(); ++oc) {
    const std::string p1 = Item(kp, oc);
    const Json& k1 = RequireArray(k[oc], p1);
    if (oc == 0) c.in_channels = k1.size();
    if (k1.size() != c.in_channels || c.in_channels == 0) {
      throw ParseError(p1, "inconsistent input-channel count");
    }
    for (std::size_t ic = 0; ic < k1.size(); ++ic) {
      const std::string p2 = Item(p1, ic);
      const Json& k2 = RequireArray(k1[ic], p2);
      if (oc == 0 && ic == 0) c.kernel_h = k2.size();
      if (k2.size() != c.kernel_h || c.kernel_h == 0) {
        throw ParseError(p2, "inconsistent kernel height");
      }
      for (std::size_t r = 0; r < k2.size(); ++r) {
        std::vector<double> row = Vector(k2[r], Item(p2, r));
        if (oc == 0 && ic == 0 && r == 0) c.kernel_w = row.size();
        if (row.size() != c.kernel_w || c.kernel_w == 0) {
          throw ParseError(Item(p2, r), "inconsistent kernel width");
        }
        c.kernel.insert(c.kernel.end(), row.begin(), row.end());
      }
    }
  }
  c.bias = Vector(Require(layer, "bias", path), Field(path, "bias"));
  const std::string sp = Field(path, "input_shape");
  const Json& shape = RequireArray(Require(layer, "input_shape", path), sp);
  if (shape.size() != 3) throw ParseError(sp, "expected [C, H, W]");
  c.input_shape = {Count(shape[0], Item(sp, 0)), Count(shape[1], Item(sp, 1)),
                   Count(shape[2], Item(sp, 2))};
  if (const auto it = layer.find("strides"); it != layer.end()) {
    const std::string tp = Field(path, "strides");
    if (!it->is_array() || it->size() != 2) {
      throw ParseError(tp, "expected [sh, sw]");
    }
    c.stride_h = Count((*it)[0], Item(tp, 0));
    c.stride_w = Count((*it)[1], Item(tp, 1));
    if (c.stride_h == 0 || c.stride_w == 0) {
      throw ParseError(tp, "strides must be positive");
    }
  }
  return c;
}

void Revalidate(const NetworkDefinition& net) {
  try {
    ValidateNetwork(net);
  } catch (const ModelError& e) {
    throw ParseError("", e.what());
  }
}

}  // namespace

ParseReport ParseNetwork(std::string_view text) {
  const Json root = ParseJson(text);
  RequireObject(root, "");
  ParseReport report;
  CheckFormatVersion(root, report.warnings);
  WarnUnknownKeys(root,
                  {"format_version", "input_size", "input_bounds", "scaling",
                   "layers"},
                  "", report.warnings);

  NetworkDefinition net;
  net.input_size = Count(Require(root, "input_size", ""), "input_size");
  if (net.input_size == 0) throw ParseError("input_size", "must be positive");
  net.input_bounds = Bounds(Require(root, "input_bounds", ""), "input_bounds");
  if (net.input_bounds.size() != net.input_size) {
    throw ParseError("input_bounds",
                     "has " + std::to_string(net.input_bounds.size()) +
                         " entries, input_size is " +
                         std::to_string(net.input_size));
  }

  if (const auto it = root.find("scaling"); it != root.end()) {
    RequireObject(*it, "scaling");
    WarnUnknownKeys(*it,
                    {"input_offset", "input_factor", "output_offset",
                     "output_factor"},
                    "scaling", report.warnings);
    OffsetScaling s;
    s.input_offset =
        Vector(Require(*it, "input_offset", "scaling"), "scaling.input_offset");
    s.input_factor =
        Vector(Require(*it, "input_factor", "scaling"), "scaling.input_factor");
    s.output_offset = Vector(Require(*it, "output_offset", "scaling"),
                             "scaling.output_offset");
    s.output_factor = Vector(Require(*it, "output_factor", "scaling"),
                             "scaling.output_factor");
    for (const auto& [name, v] :
         {std::pair{"scaling.input_factor", &s.input_factor},
          std::pair{"scaling.output_factor", &s.output_factor}}) {
      for (std::size_t i = 0; i < v->size(); ++i) {
        if ((*v)[i] == 0.0) throw ParseError(Item(name, i), "factor is zero");
      }
    }
    net.scaling = std::move(s);
  } else {
    report.warnings.push_back("no scaling block; inputs and outputs unscaled");
  }

  const Json& layers = RequireArray(Require(root, "layers", ""), "layers");
  if (layers.empty()) throw ParseError("layers", "network has no layers");
  std::size_t expected_in = net.input_size;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string path = Item("layers", l);
    const Json& lj = layers[l];
    RequireObject(lj, path);
    const Json& type = Require(lj, "type", path);
    if (!type.is_string()) throw ParseError(Field(path, "type"), "expected a string");
    Layer layer;
    const std::string t = type.get<std::string>();
    if (t == "dense") {
      WarnUnknownKeys(lj, {"type", "weights", "bias", "activation"}, path,
                      report.warnings);
      layer.op = ParseDense(lj, path);
    } else if (t == "conv2d") {
      WarnUnknownKeys(lj,
                      {"type", "kernel", "bias", "input_shape", "strides",
                       "activation"},
                      path, report.warnings);
      layer.op = ParseConv(lj, path);
    } else {
      throw ParseError(Field(path, "type"), "unknown layer type '" + t +
                                                "' (expected dense or conv2d)");
    }
    layer.activation = ParseActivationField(lj, path);
    if (layer.InputSize() != expected_in) {
      throw ParseError(path, "layer " + std::to_string(l) +
                                 ": dimension mismatch, expects " +
                                 std::to_string(layer.InputSize()) +
                                 " inputs but receives " +
                                 std::to_string(expected_in));
    }
    net.layers.push_back(std::move(layer));
    if (const Layer& added = net.layers.back(); added.is_dense()) {
      const DenseLayer& d = added.dense();
      if (d.bias.size() != d.out_size) {
        throw ParseError(Field(path, "bias"),
                         "layer " + std::to_string(l) +
                             ": dimension mismatch, bias length " +
                             std::to_string(d.bias.size()) + " but " +
                             std::to_string(d.out_size) + " weight rows");
      }
    }
    expected_in = net.layers.back().OutputSize();
  }
  Revalidate(net);
  report.model = std::move(net);
  return report;
}

ParseReport ParseNetwork(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), {}};
  return ParseNetwork(text);
}

ParseReport ParseEnsemble(std::string_view text) {
  const Json root = ParseJson(text);
  RequireObject(root, "");
  ParseReport report;
  CheckFormatVersion(root, report.warnings);
  WarnUnknownKeys(root,
                  {"format_version", "n_features", "base_score",
                   "feature_bounds", "trees"},
                  "", report.warnings);
  TreeEnsemble ens;
  ens.n_features = Count(Require(root, "n_features", ""), "n_features");
  if (ens.n_features == 0) throw ParseError("n_features", "must be positive");
  if (const auto it = root.find("base_score"); it != root.end()) {
    ens.base_score = Number(*it, "base_score");
  } else {
    report.warnings.push_back("base_score missing; using 0");
  }
  ens.feature_bounds =
      Bounds(Require(root, "feature_bounds", ""), "feature_bounds");
  if (ens.feature_bounds.size() != ens.n_features) {
    throw ParseError("feature_bounds",
                     "has " + std::to_string(ens.feature_bounds.size()) +
                         " entries, n_features is " +
                         std::to_string(ens.n_features));
  }
  const Json& trees = RequireArray(Require(root, "trees", ""), "trees");
  for (std::size_t t = 0; t < trees.size(); ++t) {
    const std::string tp = Item("trees", t);
    RequireObject(trees[t], tp);
    const std::string np = Field(tp, "nodes");
    const Json& nodes = RequireArray(Require(trees[t], "nodes", tp), np);
    Tree tree;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      const std::string p = Item(np, n);
      const Json& nj = nodes[n];
      RequireObject(nj, p);
      if (nj.contains("leaf")) {
        if (nj.contains("feature") || nj.contains("left") ||
            nj.contains("right") || nj.contains("threshold")) {
          throw ParseError(p, "node mixes leaf and split fields");
        }
        tree.nodes.push_back(TreeLeaf{Number(nj["leaf"], Field(p, "leaf"))});
        continue;
      }
      TreeSplit s;
      s.feature = Count(Require(nj, "feature", p), Field(p, "feature"));
      s.threshold = Number(Require(nj, "threshold", p), Field(p, "threshold"));
      s.left = Count(Require(nj, "left", p), Field(p, "left"));
      s.right = Count(Require(nj, "right", p), Field(p, "right"));
      if (s.feature >= ens.n_features) {
        throw ParseError(Field(p, "feature"),
                         "tree " + std::to_string(t) + " node " +
                             std::to_string(n) + ": feature index " +
                             std::to_string(s.feature) +
                             " out of range for n_features " +
                             std::to_string(ens.n_features));
      }
      tree.nodes.push_back(s);
    }
    ens.trees.push_back(std::move(tree));
  }
  try {
    ValidateEnsemble(ens);
  } catch (const ModelError& e) {
    throw ParseError("trees", e.what());
  }
  report.model = std::move(ens);
  return report;
}

ParseReport ParseEnsemble(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), {}};
  return ParseEnsemble(text);
}

ParseReport ParseModel(std::string_view text) {
  const Json root = ParseJson(text);
  RequireObject(root, "");
  if (root.contains("layers")) return ParseNetwork(text);
  if (root.contains("trees")) return ParseEnsemble(text);
  throw ParseError("", "neither a network (\"layers\") nor an ensemble "
                       "(\"trees\") file");
}

ParseReport ReadModelFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open '" + path + "'");
  const std::string text{std::istreambuf_iterator<char>(in), {}};
  return ParseModel(text);
}

namespace {

OrderedJson BoundsJson(const std::vector<Interval>& bounds) {
  OrderedJson out = OrderedJson::array();
  for (const Interval& b : bounds) out.push_back({b.lb, b.ub});
  return out;
}

OrderedJson LayerJson(const Layer& layer) {
  OrderedJson j;
  if (layer.is_dense()) {
    const DenseLayer& d = layer.dense();
    j["type"] = "dense";
    OrderedJson rows = OrderedJson::array();
    for (std::size_t i = 0; i < d.out_size; ++i) {
      rows.push_back(std::vector<double>(
          d.weights.begin() + static_cast<long>(i * d.in_size),
          d.weights.begin() + static_cast<long>((i + 1) * d.in_size)));
    }
    j["weights"] = std::move(rows);
    j["bias"] = d.bias;
  } else {
    const Conv2dLayer& c = layer.conv();
    j["type"] = "conv2d";
    OrderedJson kernel = OrderedJson::array();
    for (std::size_t oc = 0; oc < c.out_channels; ++oc) {
      OrderedJson k1 = OrderedJson::array();
      for (std::size_t ic = 0; ic < c.in_channels; ++ic) {
        OrderedJson k2 = OrderedJson::array();
        for (std::size_t r = 0; r < c.kernel_h; ++r) {
          OrderedJson row = OrderedJson::array();
          for (std::size_t w = 0; w < c.kernel_w; ++w) {
            row.push_back(c.kernel_at(oc, ic, r, w));
          }
          k2.push_back(std::move(row));
        }
        k1.push_back(std::move(k2));
      }
      kernel.push_back(std::move(k1));
    }
    j["kernel"] = std::move(kernel);
    j["bias"] = c.bias;
    j["input_shape"] = {c.input_shape.channels, c.input_shape.height,
                        c.input_shape.width};
    j["strides"] = {c.stride_h, c.stride_w};
  }
  j["activation"] = std::string(ActivationName(layer.activation));
  return j;
}

}  // namespace

std::string WriteNetwork(const NetworkDefinition& net) {
  OrderedJson root;
  root["format_version"] = 1;
  root["input_size"] = net.input_size;
  root["input_bounds"] = BoundsJson(net.input_bounds);
  if (net.scaling) {
    root["scaling"] = {{"input_offset", net.scaling->input_offset},
                       {"input_factor", net.scaling->input_factor},
                       {"output_offset", net.scaling->output_offset},
                       {"output_factor", net.scaling->output_factor}};
  }
  OrderedJson layers = OrderedJson::array();
  for (const Layer& layer : net.layers) layers.push_back(LayerJson(layer));
  root["layers"] = std::move(layers);
  return root.dump(2) + "\n";
}

std::string WriteEnsemble(const TreeEnsemble& ensemble) {
  OrderedJson root;
  root["format_version"] = 1;
  root["n_features"] = ensemble.n_features;
  root["base_score"] = ensemble.base_score;
  root["feature_bounds"] = BoundsJson(ensemble.feature_bounds);
  OrderedJson trees = OrderedJson::array();
  for (const Tree& tree : ensemble.trees) {
    OrderedJson nodes = OrderedJson::array();
    for (const TreeNode& node : tree.nodes) {
      if (const auto* leaf = std::get_if<TreeLeaf>(&node)) {
        nodes.push_back({{"leaf", leaf->value}});
      } else {
        const auto& s = std::get<TreeSplit>(node);
        OrderedJson n;
        n["feature"] = s.feature;
        n["threshold"] = s.threshold;
        n["left"] = s.left;
        n["right"] = s.right;
        nodes.push_back(std::move(n));
      }
    }
    OrderedJson t;
    t["nodes"] = std::move(nodes);
    trees.push_back(std::move(t));
  }
  root["trees"] = std::move(trees);
  return root.dump(2) + "\n";
}

}  // namespace surrogate
