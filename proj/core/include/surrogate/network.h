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

// Layered neural-network IR and its exact forward evaluation. The forward
// pass here is the ground truth every formulation is tested against.

#ifndef SURROGATE_NETWORK_H_
#define SURROGATE_NETWORK_H_

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "surrogate/activation.h"

namespace surrogate {

struct Interval {
  double lb = 0.0;
  double ub = 0.0;

  bool operator==(const Interval&) const = default;
};

struct DenseLayer {
  std::size_t in_size = 0;
  std::size_t out_size = 0;
  std::vector<double> weights;  // row-major, out_size x in_size
  std::vector<double> bias;     // out_size

  double weight(std::size_t out, std::size_t in) const {
    return weights[out * in_size + in];
  }

  bool operator==(const DenseLayer&) const = default;
};

struct Shape3 {
  std::size_t channels = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  std::size_t size() const { return channels * height * width; }
  std::size_t index(std::size_t c, std::size_t h, std::size_t w) const {
    return (c * height + h) * width + w;
  }

  bool operator==(const Shape3&) const = default;
};

// Valid-padding 2-D convolution over a CHW input.
struct Conv2dLayer {
  std::size_t out_channels = 0;
  std::size_t in_channels = 0;
  std::size_t kernel_h = 0;
  std::size_t kernel_w = 0;
  std::vector<double> kernel;  // out_channels x in_channels x kernel_h x kernel_w
  std::vector<double> bias;    // out_channels
  Shape3 input_shape;
  std::size_t stride_h = 1;
  std::size_t stride_w = 1;

  double kernel_at(std::size_t oc, std::size_t ic, std::size_t r,
                   std::size_t c) const {
    return kernel[((oc * in_channels + ic) * kernel_h + r) * kernel_w + c];
  }
  // Zero spatial extent if the kernel does not fit.
  Shape3 OutputShape() const;

  bool operator==(const Conv2dLayer&) const = default;
};

struct Layer {
  std::variant<DenseLayer, Conv2dLayer> op;
  Activation activation = Activation::kLinear;

  bool is_dense() const { return std::holds_alternative<DenseLayer>(op); }
  const DenseLayer& dense() const { return std::get<DenseLayer>(op); }
  const Conv2dLayer& conv() const { return std::get<Conv2dLayer>(op); }
  std::size_t InputSize() const;
  std::size_t OutputSize() const;

  bool operator==(const Layer&) const = default;
};

// x_scaled = (x - input_offset) / input_factor
// y = y_scaled * output_factor + output_offset
struct OffsetScaling {
  std::vector<double> input_offset;
  std::vector<double> input_factor;
  std::vector<double> output_offset;
  std::vector<double> output_factor;

  std::vector<double> ScaleInput(std::span<const double> x) const;
  std::vector<double> UnscaleInput(std::span<const double> x_scaled) const;
  std::vector<double> ScaleOutput(std::span<const double> y) const;
  std::vector<double> UnscaleOutput(std::span<const double> y_scaled) const;

  bool operator==(const OffsetScaling&) const = default;
};

struct NetworkDefinition {
  std::size_t input_size = 0;
  std::vector<Interval> input_bounds;  // raw (unscaled) units
  std::optional<OffsetScaling> scaling;
  std::vector<Layer> layers;

  std::size_t OutputSize() const {
    return layers.empty() ? 0 : layers.back().OutputSize();
  }

  bool operator==(const NetworkDefinition&) const = default;
};

// Throws ModelError naming the offending layer. Input-bound finiteness is
// checked later, by the consumers that need it.
void ValidateNetwork(const NetworkDefinition& net);

// Throws ModelError unless every input bound is finite.
void RequireFiniteInputBounds(const NetworkDefinition& net);

struct AffineTerm {
  std::size_t index = 0;
  double weight = 0.0;
};

// out_dim x in_dim sparse linear map plus bias. Dense and convolutional layers
// are both lowered to this so downstream code has one path.
struct SparseAffine {
  std::size_t in_dim = 0;
  std::vector<std::vector<AffineTerm>> rows;
  std::vector<double> bias;

  std::size_t out_dim() const { return rows.size(); }
};

SparseAffine ConvAsSparseAffine(const Conv2dLayer& layer);
SparseAffine LayerAffine(const Layer& layer);

// Same function, every conv layer replaced by its dense equivalent.
NetworkDefinition ExpandConvolutions(const NetworkDefinition& net);

struct ForwardTrace {
  std::vector<double> scaled_input;
  std::vector<std::vector<double>> pre;   // per layer, before activation
  std::vector<std::vector<double>> post;  // per layer, after activation
  std::vector<double> output;             // unscaled
};

ForwardTrace NnForwardTrace(const NetworkDefinition& net,
                            std::span<const double> x);
std::vector<double> NnForward(const NetworkDefinition& net,
                              std::span<const double> x);

// Number of neurons using each activation across all layers.
std::size_t CountNeurons(const NetworkDefinition& net, Activation activation);

}  // namespace surrogate

#endif  // SURROGATE_NETWORK_H_
