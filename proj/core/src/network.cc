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

#include "surrogate/network.h"

#include <cmath>
#include <sstream>
#include <string>

#include "surrogate/status.h"

namespace surrogate {
namespace {

[[noreturn]] void LayerError(std::size_t layer, const std::string& what) {
  std::ostringstream os;
  os << "layer " << layer << ": " << what;
  throw ModelError(os.str());
}

bool AllFinite(const std::vector<double>& v) {
  for (double d : v) {
    if (!std::isfinite(d)) return false;
  }
  return true;
}

void ValidateDense(std::size_t index, const DenseLayer& d) {
  if (d.in_size == 0 || d.out_size == 0) LayerError(index, "empty dense layer");
  if (d.weights.size() != d.in_size * d.out_size) {
    LayerError(index, "weight matrix has " + std::to_string(d.weights.size()) +
                          " entries, expected " +
                          std::to_string(d.out_size) + "x" +
                          std::to_string(d.in_size));
  }
  if (d.bias.size() != d.out_size) {
    LayerError(index, "bias length " + std::to_string(d.bias.size()) +
                          " does not match " + std::to_string(d.out_size) +
                          " weight rows");
  }
  if (!AllFinite(d.weights) || !AllFinite(d.bias)) {
    LayerError(index, "non-finite parameter");
  }
}

void ValidateConv(std::size_t index, const Conv2dLayer& c) {
  if (c.out_channels == 0 || c.in_channels == 0 || c.kernel_h == 0 ||
      c.kernel_w == 0) {
    LayerError(index, "empty convolution kernel");
  }
  if (c.stride_h == 0 || c.stride_w == 0) LayerError(index, "zero stride");
  if (c.kernel.size() !=
      c.out_channels * c.in_channels * c.kernel_h * c.kernel_w) {
    LayerError(index, "kernel size does not match its declared shape");
  }
  if (c.bias.size() != c.out_channels) {
    LayerError(index, "bias length " + std::to_string(c.bias.size()) +
                          " does not match " +
                          std::to_string(c.out_channels) + " output channels");
  }
  if (c.input_shape.channels != c.in_channels) {
    LayerError(index, "input_shape has " +
                          std::to_string(c.input_shape.channels) +
                          " channels, kernel expects " +
                          std::to_string(c.in_channels));
  }
  if (c.kernel_h > c.input_shape.height || c.kernel_w > c.input_shape.width) {
    LayerError(index, "kernel larger than input");
  }
  if (!AllFinite(c.kernel) || !AllFinite(c.bias)) {
    LayerError(index, "non-finite parameter");
  }
}

}  // namespace

Shape3 Conv2dLayer::OutputShape() const {
  Shape3 out;
  out.channels = out_channels;
  if (stride_h == 0 || stride_w == 0 || kernel_h > input_shape.height ||
      kernel_w > input_shape.width) {
    return out;
  }
  out.height = (input_shape.height - kernel_h) / stride_h + 1;
  out.width = (input_shape.width - kernel_w) / stride_w + 1;
  return out;
}

std::size_t Layer::InputSize() const {
  return is_dense() ? dense().in_size : conv().input_shape.size();
}

std::size_t Layer::OutputSize() const {
  return is_dense() ? dense().out_size : conv().OutputShape().size();
}

std::vector<double> OffsetScaling::ScaleInput(std::span<const double> x) const {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = (x[i] - input_offset[i]) / input_factor[i];
  }
  return out;
}

std::vector<double> OffsetScaling::UnscaleInput(
    std::span<const double> x_scaled) const {
  std::vector<double> out(x_scaled.size());
  for (std::size_t i = 0; i < x_scaled.size(); ++i) {
    out[i] = x_scaled[i] * input_factor[i] + input_offset[i];
  }
  return out;
}

std::vector<double> OffsetScaling::ScaleOutput(std::span<const double> y) const {
  std::vector<double> out(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    out[j] = (y[j] - output_offset[j]) / output_factor[j];
  }
  return out;
}

std::vector<double> OffsetScaling::UnscaleOutput(
    std::span<const double> y_scaled) const {
  std::vector<double> out(y_scaled.size());
  for (std::size_t j = 0; j < y_scaled.size(); ++j) {
    out[j] = y_scaled[j] * output_factor[j] + output_offset[j];
  }
  return out;
}

void ValidateNetwork(const NetworkDefinition& net) {
  if (net.input_size == 0) throw ModelError("input_size must be positive");
  if (net.input_bounds.size() != net.input_size) {
    throw ModelError("input_bounds has " +
                     std::to_string(net.input_bounds.size()) +
                     " entries, input_size is " +
                     std::to_string(net.input_size));
  }
  for (std::size_t i = 0; i < net.input_bounds.size(); ++i) {
    const Interval& b = net.input_bounds[i];
    if (std::isnan(b.lb) || std::isnan(b.ub) || b.lb > b.ub) {
      throw ModelError("input bound " + std::to_string(i) +
                       " has lb > ub or is NaN");
    }
  }
  if (net.layers.empty()) throw ModelError("network has no layers");
  std::size_t expected = net.input_size;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& layer = net.layers[l];
    if (layer.is_dense()) {
      ValidateDense(l, layer.dense());
    } else {
      ValidateConv(l, layer.conv());
    }
    if (layer.InputSize() != expected) {
      LayerError(l, "expects " + std::to_string(layer.InputSize()) +
                        " inputs, previous layer provides " +
                        std::to_string(expected));
    }
    expected = layer.OutputSize();
  }
  if (net.scaling) {
    const OffsetScaling& s = *net.scaling;
    const std::size_t out = net.OutputSize();
    if (s.input_offset.size() != net.input_size ||
        s.input_factor.size() != net.input_size) {
      throw ModelError("scaling input vectors must have input_size entries");
    }
    if (s.output_offset.size() != out || s.output_factor.size() != out) {
      throw ModelError("scaling output vectors must have one entry per output");
    }
    for (const auto* v : {&s.input_offset, &s.input_factor, &s.output_offset,
                          &s.output_factor}) {
      if (!AllFinite(*v)) throw ModelError("non-finite scaling entry");
    }
    for (const auto* v : {&s.input_factor, &s.output_factor}) {
      for (double f : *v) {
        if (f == 0.0) throw ModelError("scaling factor must be nonzero");
      }
    }
  }
}

void RequireFiniteInputBounds(const NetworkDefinition& net) {
  for (std::size_t i = 0; i < net.input_bounds.size(); ++i) {
    const Interval& b = net.input_bounds[i];
    if (!std::isfinite(b.lb) || !std::isfinite(b.ub)) {
      throw ModelError("input bound " + std::to_string(i) +
                       " is not finite; finite bounds are required");
    }
  }
}

SparseAffine ConvAsSparseAffine(const Conv2dLayer& layer) {
  const Shape3 in = layer.input_shape;
  const Shape3 out = layer.OutputShape();
  SparseAffine map;
  map.in_dim = in.size();
  map.rows.resize(out.size());
  map.bias.resize(out.size());
  for (std::size_t oc = 0; oc < out.channels; ++oc) {
    for (std::size_t oh = 0; oh < out.height; ++oh) {
      for (std::size_t ow = 0; ow < out.width; ++ow) {
        const std::size_t row = out.index(oc, oh, ow);
        auto& terms = map.rows[row];
        terms.reserve(layer.in_channels * layer.kernel_h * layer.kernel_w);
        for (std::size_t ic = 0; ic < layer.in_channels; ++ic) {
          for (std::size_t r = 0; r < layer.kernel_h; ++r) {
            for (std::size_t c = 0; c < layer.kernel_w; ++c) {
              terms.push_back({in.index(ic, oh * layer.stride_h + r,
                                        ow * layer.stride_w + c),
                               layer.kernel_at(oc, ic, r, c)});
            }
          }
        }
        map.bias[row] = layer.bias[oc];
      }
    }
  }
  return map;
}

SparseAffine LayerAffine(const Layer& layer) {
  if (!layer.is_dense()) return ConvAsSparseAffine(layer.conv());
  const DenseLayer& d = layer.dense();
  SparseAffine map;
  map.in_dim = d.in_size;
  map.rows.resize(d.out_size);
  map.bias = d.bias;
  for (std::size_t i = 0; i < d.out_size; ++i) {
    map.rows[i].reserve(d.in_size);
    for (std::size_t j = 0; j < d.in_size; ++j) {
      map.rows[i].push_back({j, d.weight(i, j)});
    }
  }
  return map;
}

NetworkDefinition ExpandConvolutions(const NetworkDefinition& net) {
  NetworkDefinition out = net;
  for (Layer& layer : out.layers) {
    if (layer.is_dense()) continue;
    const SparseAffine map = ConvAsSparseAffine(layer.conv());
    DenseLayer d;
    d.in_size = map.in_dim;
    d.out_size = map.out_dim();
    d.weights.assign(d.in_size * d.out_size, 0.0);
    d.bias = map.bias;
    for (std::size_t i = 0; i < map.out_dim(); ++i) {
      for (const AffineTerm& t : map.rows[i]) {
        d.weights[i * d.in_size + t.index] += t.weight;
      }
    }
    layer.op = std::move(d);
  }
  return out;
}

namespace {

// Accumulation order matches LayerAffine so interval bounds computed over
// the same terms bracket these values exactly.
std::vector<double> ApplyDense(const DenseLayer& d, std::span<const double> in) {
  std::vector<double> out(d.out_size);
  for (std::size_t i = 0; i < d.out_size; ++i) {
    double acc = d.bias[i];
    for (std::size_t j = 0; j < d.in_size; ++j) acc += d.weight(i, j) * in[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> ApplyConv(const Conv2dLayer& c, std::span<const double> in) {
  const Shape3 is = c.input_shape;
  const Shape3 os = c.OutputShape();
  std::vector<double> out(os.size());
  for (std::size_t oc = 0; oc < os.channels; ++oc) {
    for (std::size_t oh = 0; oh < os.height; ++oh) {
      for (std::size_t ow = 0; ow < os.width; ++ow) {
        double acc = c.bias[oc];
        for (std::size_t ic = 0; ic < c.in_channels; ++ic) {
          for (std::size_t r = 0; r < c.kernel_h; ++r) {
            for (std::size_t k = 0; k < c.kernel_w; ++k) {
              acc += c.kernel_at(oc, ic, r, k) *
                     in[is.index(ic, oh * c.stride_h + r, ow * c.stride_w + k)];
            }
          }
        }
        out[os.index(oc, oh, ow)] = acc;
      }
    }
  }
  return out;
}

}  // namespace

ForwardTrace NnForwardTrace(const NetworkDefinition& net,
                            std::span<const double> x) {
  if (x.size() != net.input_size) {
    LayerError(0, "expects " + std::to_string(net.input_size) +
                      " inputs, got " + std::to_string(x.size()));
  }
  ForwardTrace trace;
  trace.scaled_input = net.scaling ? net.scaling->ScaleInput(x)
                                   : std::vector<double>(x.begin(), x.end());
  trace.pre.reserve(net.layers.size());
  trace.post.reserve(net.layers.size());
  std::span<const double> current = trace.scaled_input;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const Layer& layer = net.layers[l];
    if (layer.InputSize() != current.size()) {
      LayerError(l, "expects " + std::to_string(layer.InputSize()) +
                        " inputs, got " + std::to_string(current.size()));
    }
    trace.pre.push_back(layer.is_dense() ? ApplyDense(layer.dense(), current)
                                         : ApplyConv(layer.conv(), current));
    std::vector<double> post = trace.pre.back();
    for (double& v : post) v = Activate(layer.activation, v);
    trace.post.push_back(std::move(post));
    current = trace.post.back();
  }
  trace.output = net.scaling ? net.scaling->UnscaleOutput(current)
                             : std::vector<double>(current.begin(),
                                                   current.end());
  return trace;
}

std::vector<double> NnForward(const NetworkDefinition& net,
                              std::span<const double> x) {
  return NnForwardTrace(net, x).output;
}

std::size_t CountNeurons(const NetworkDefinition& net, Activation activation) {
  std::size_t n = 0;
  for (const Layer& layer : net.layers) {
    if (layer.activation == activation) n += layer.OutputSize();
  }
  return n;
}

}  // namespace surrogate
