// Copyright 2026 The vfkt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vfkt/numerics/dense_net.h"

#include <cmath>

#include "vfkt/error.h"
#include "vfkt/numerics/random.h"

namespace vfkt::numerics {
namespace {

void ApplyActivation(Matrix& m, Activation activation) {
  switch (activation) {
    case Activation::kLinear:
      return;
    case Activation::kSigmoid:
      for (double& v : m.data()) v = 1.0 / (1.0 + std::exp(-v));
      return;
    case Activation::kRelu:
      for (double& v : m.data()) v = v > 0.0 ? v : 0.0;
      return;
  }
}

// Multiplies grad (in place) by the activation derivative, expressed through
// the post-activation output.
void ActivationBackward(Matrix& grad, const Matrix& output, Activation activation) {
  auto g = grad.data();
  auto y = output.data();
  switch (activation) {
    case Activation::kLinear:
      return;
    case Activation::kSigmoid:
      for (std::size_t k = 0; k < g.size(); ++k) g[k] *= y[k] * (1.0 - y[k]);
      return;
    case Activation::kRelu:
      for (std::size_t k = 0; k < g.size(); ++k) g[k] = y[k] > 0.0 ? g[k] : 0.0;
      return;
  }
}

}  // namespace

std::string_view ActivationName(Activation activation) {
  switch (activation) {
    case Activation::kLinear:
      return "linear";
    case Activation::kSigmoid:
      return "sigmoid";
    case Activation::kRelu:
      return "relu";
  }
  return "linear";
}

Activation ParseActivation(std::string_view name) {
  if (name == "linear") return Activation::kLinear;
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "relu") return Activation::kRelu;
  Throw(ErrorCode::kParse, "unknown activation '{}'", name);
}

void AdamMoments::Resize(std::size_t n) {
  first.assign(n, 0.0);
  second.assign(n, 0.0);
}

void AdamUpdate(std::span<double> params, std::span<const double> grads, AdamMoments& moments,
                long step, const AdamOptions& options) {
  VFKT_ENFORCE(params.size() == grads.size(), ErrorCode::kDimensionMismatch,
               "adam: {} parameters but {} gradients", params.size(), grads.size());
  if (moments.first.size() != params.size()) moments.Resize(params.size());
  const double b1 = options.beta1;
  const double b2 = options.beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(step));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(step));
  for (std::size_t k = 0; k < params.size(); ++k) {
    moments.first[k] = b1 * moments.first[k] + (1.0 - b1) * grads[k];
    moments.second[k] = b2 * moments.second[k] + (1.0 - b2) * grads[k] * grads[k];
    const double m_hat = moments.first[k] / correction1;
    const double v_hat = moments.second[k] / correction2;
    params[k] -= options.learning_rate * m_hat / (std::sqrt(v_hat) + options.epsilon);
  }
}

DenseNet DenseNet::Create(std::span<const std::size_t> widths,
                          std::span<const Activation> activations, std::uint64_t seed) {
  VFKT_ENFORCE(widths.size() == activations.size() + 1 && !activations.empty(),
               ErrorCode::kInvalidArgument, "dense net: {} widths for {} activations",
               widths.size(), activations.size());
  Rng rng(seed);
  DenseNet net;
  for (std::size_t l = 0; l < activations.size(); ++l) {
    const std::size_t fan_in = widths[l];
    const std::size_t fan_out = widths[l + 1];
    VFKT_ENFORCE(fan_in > 0 && fan_out > 0, ErrorCode::kInvalidArgument,
                 "dense net: zero layer width");
    DenseLayer layer;
    layer.weight = Matrix(fan_in, fan_out);
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& w : layer.weight.data()) w = limit * (2.0 * rng.Uniform() - 1.0);
    layer.bias.assign(fan_out, 0.0);
    layer.activation = activations[l];
    layer.weight_moments.Resize(layer.weight.size());
    layer.bias_moments.Resize(fan_out);
    net.layers_.push_back(std::move(layer));
  }
  return net;
}

std::size_t DenseNet::input_width() const {
  return layers_.empty() ? 0 : layers_.front().weight.rows();
}

std::size_t DenseNet::output_width() const {
  return layers_.empty() ? 0 : layers_.back().weight.cols();
}

std::size_t DenseNet::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weight.size() + l.bias.size();
  return n;
}

DenseNet DenseNet::FromLayers(std::vector<DenseLayer> layers) {
  VFKT_ENFORCE(!layers.empty(), ErrorCode::kInvalidArgument, "dense net: no layers");
  DenseNet net;
  net.layers_ = std::move(layers);
  net.ResetOptimizer();
  net.Validate();
  return net;
}

void DenseNet::ResetOptimizer() {
  for (auto& layer : layers_) {
    layer.weight_moments.Resize(layer.weight.size());
    layer.bias_moments.Resize(layer.bias.size());
  }
  adam_step_ = 0;
}

void DenseNet::Validate() const {
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    VFKT_ENFORCE(layer.bias.size() == layer.weight.cols(), ErrorCode::kDimensionMismatch,
                 "layer {}: bias of {} for {} outputs", l, layer.bias.size(), layer.weight.cols());
    if (l > 0) {
      VFKT_ENFORCE(layers_[l - 1].weight.cols() == layer.weight.rows(),
                   ErrorCode::kDimensionMismatch, "layer {}: input {} does not chain from {}", l,
                   layer.weight.rows(), layers_[l - 1].weight.cols());
    }
    VFKT_ENFORCE(layer.weight_moments.first.size() == layer.weight.size() &&
                     layer.bias_moments.first.size() == layer.bias.size(),
                 ErrorCode::kDimensionMismatch, "layer {}: adam state shape mismatch", l);
  }
}

DenseGradients& DenseGradients::operator+=(const DenseGradients& other) {
  VFKT_ENFORCE(weight.size() == other.weight.size(), ErrorCode::kDimensionMismatch,
               "gradient layer count mismatch");
  for (std::size_t l = 0; l < weight.size(); ++l) {
    weight[l] += other.weight[l];
    for (std::size_t k = 0; k < bias[l].size(); ++k) bias[l][k] += other.bias[l][k];
  }
  if (!input.empty() && !other.input.empty()) input += other.input;
  return *this;
}

DenseGradients& DenseGradients::operator*=(double scale) {
  for (auto& w : weight) w *= scale;
  for (auto& b : bias) {
    for (double& v : b) v *= scale;
  }
  input *= scale;
  return *this;
}

Matrix Forward(const DenseNet& net, const Matrix& x, ForwardCache* cache) {
  VFKT_ENFORCE(x.cols() == net.input_width(), ErrorCode::kDimensionMismatch,
               "dense forward: input width {} but net expects {}", x.cols(), net.input_width());
  if (cache != nullptr) {
    cache->inputs.clear();
    cache->outputs.clear();
  }
  Matrix current = x;
  for (const auto& layer : net.layers()) {
    Matrix next = MatMul(current, layer.weight);
    for (std::size_t i = 0; i < next.rows(); ++i) {
      auto r = next.row(i);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] += layer.bias[j];
    }
    ApplyActivation(next, layer.activation);
    if (cache != nullptr) {
      cache->inputs.push_back(std::move(current));
      cache->outputs.push_back(next);
    }
    current = std::move(next);
  }
  return current;
}

DenseGradients Backward(const DenseNet& net, const ForwardCache& cache, const Matrix& grad_output) {
  const auto& layers = net.layers();
  VFKT_ENFORCE(cache.inputs.size() == layers.size(), ErrorCode::kInvalidArgument,
               "dense backward: cache from a different net");
  VFKT_ENFORCE(grad_output.rows() == cache.outputs.back().rows() &&
                   grad_output.cols() == net.output_width(),
               ErrorCode::kDimensionMismatch, "dense backward: grad shape {}x{}",
               grad_output.rows(), grad_output.cols());
  DenseGradients grads;
  grads.weight.resize(layers.size());
  grads.bias.resize(layers.size());
  Matrix upstream = grad_output;
  for (std::size_t l = layers.size(); l-- > 0;) {
    ActivationBackward(upstream, cache.outputs[l], layers[l].activation);
    grads.weight[l] = MatMulTN(cache.inputs[l], upstream);
    grads.bias[l].assign(upstream.cols(), 0.0);
    for (std::size_t i = 0; i < upstream.rows(); ++i) {
      const auto r = upstream.row(i);
      for (std::size_t j = 0; j < r.size(); ++j) grads.bias[l][j] += r[j];
    }
    upstream = MatMulNT(upstream, layers[l].weight);
  }
  grads.input = std::move(upstream);
  return grads;
}

void AdamStep(DenseNet& net, const DenseGradients& grads, const AdamOptions& options) {
  VFKT_ENFORCE(grads.weight.size() == net.layers_.size(), ErrorCode::kDimensionMismatch,
               "adam: gradients for {} layers, net has {}", grads.weight.size(),
               net.layers_.size());
  ++net.adam_step_;
  for (std::size_t l = 0; l < net.layers_.size(); ++l) {
    auto& layer = net.layers_[l];
    VFKT_ENFORCE(grads.weight[l].rows() == layer.weight.rows() &&
                     grads.weight[l].cols() == layer.weight.cols(),
                 ErrorCode::kDimensionMismatch, "adam: layer {} gradient shape mismatch", l);
    AdamUpdate(layer.weight.data(), grads.weight[l].data(), layer.weight_moments, net.adam_step_,
               options);
    AdamUpdate(layer.bias, grads.bias[l], layer.bias_moments, net.adam_step_, options);
  }
}

}  // namespace vfkt::numerics
