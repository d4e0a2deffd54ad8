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

#ifndef SURROGATE_ACTIVATION_H_
#define SURROGATE_ACTIVATION_H_

#include <cmath>
#include <optional>
#include <string_view>

namespace surrogate {

// Element-wise activations. All of them are monotone nondecreasing, which the
// bound propagation relies on.
enum class Activation { kLinear, kRelu, kSigmoid, kTanh, kSoftplus };

std::string_view ActivationName(Activation activation);
std::optional<Activation> ParseActivation(std::string_view name);

inline double Relu(double v) { return v > 0.0 ? v : 0.0; }

// Overflow-safe for large |v|.
inline double Sigmoid(double v) {
  if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
  const double e = std::exp(v);
  return e / (1.0 + e);
}

// ln(1 + e^v), evaluated as v + ln(1 + e^-v) for positive v.
inline double Softplus(double v) {
  if (v > 0.0) return v + std::log1p(std::exp(-v));
  return std::log1p(std::exp(v));
}

inline double Activate(Activation activation, double v) {
  switch (activation) {
    case Activation::kLinear:
      return v;
    case Activation::kRelu:
      return Relu(v);
    case Activation::kSigmoid:
      return Sigmoid(v);
    case Activation::kTanh:
      return std::tanh(v);
    case Activation::kSoftplus:
      return Softplus(v);
  }
  return v;
}

inline bool IsSmooth(Activation activation) {
  return activation != Activation::kRelu;
}

}  // namespace surrogate

#endif  // SURROGATE_ACTIVATION_H_
