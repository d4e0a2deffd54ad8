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

#include "surrogate/activation.h"

namespace surrogate {

std::string_view ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kLinear:
      return "linear";
    case Activation::kRelu:
      return "relu";
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kTanh:
      return "tanh";
    case Activation::kSoftplus:
      return "softplus";
  }
  return "linear";
}

std::optional<Activation> ParseActivation(std::string_view name) {
  for (Activation a : {Activation::kLinear, Activation::kRelu,
                       Activation::kSigmoid, Activation::kTanh,
                       Activation::kSoftplus}) {
    if (ActivationName(a) == name) return a;
  }
  return std::nullopt;
}

}  // namespace surrogate
