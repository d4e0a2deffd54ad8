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

// Text exchange formats for networks and tree ensembles.
//
// Network file:
//   {"format_version": 1, "input_size": n, "input_bounds": [[lb, ub], ...],
//    "scaling": {"input_offset": [...], "input_factor": [...],
//                "output_offset": [...], "output_factor": [...]},   (optional)
//    "layers": [
//      {"type": "dense", "weights": [[...], ...], "bias": [...],
//       "activation": "relu"},
//      {"type": "conv2d", "kernel": [[[[...]]]], "bias": [...],
//       "input_shape": [C, H, W], "strides": [sh, sw], "activation": "tanh"}]}
//
// Ensemble file:
//   {"format_version": 1, "n_features": d, "base_score": b,
//    "feature_bounds": [[lb, ub], ...],
//    "trees": [{"nodes": [{"feature": i, "threshold": t, "left": j,
//                          "right": k}, {"leaf": v}, ...]}]}

#ifndef SURROGATE_INGEST_H_
#define SURROGATE_INGEST_H_

#include <istream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "surrogate/ensemble.h"
#include "surrogate/network.h"

namespace surrogate {

struct ParseReport {
  std::variant<NetworkDefinition, TreeEnsemble> model;
  std::vector<std::string> warnings;

  bool is_network() const {
    return std::holds_alternative<NetworkDefinition>(model);
  }
  const NetworkDefinition& network() const {
    return std::get<NetworkDefinition>(model);
  }
  const TreeEnsemble& ensemble() const { return std::get<TreeEnsemble>(model); }
};

// All parse functions throw ParseError; returned models satisfy
// ValidateNetwork / ValidateEnsemble.
ParseReport ParseNetwork(std::string_view text);
ParseReport ParseNetwork(std::istream& in);
ParseReport ParseEnsemble(std::string_view text);
ParseReport ParseEnsemble(std::istream& in);

// Dispatches on the top-level keys ("layers" vs "trees").
ParseReport ParseModel(std::string_view text);
ParseReport ReadModelFile(const std::string& path);

// Numbers are written in shortest round-trip form, so parsing the output
// reproduces the model bit for bit.
std::string WriteNetwork(const NetworkDefinition& net);
std::string WriteEnsemble(const TreeEnsemble& ensemble);

}  // namespace surrogate

#endif  // SURROGATE_INGEST_H_
