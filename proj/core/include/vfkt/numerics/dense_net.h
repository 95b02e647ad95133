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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vfkt/numerics/matrix.h"

namespace vfkt::numerics {

enum class Activation { kLinear, kSigmoid, kRelu };

std::string_view ActivationName(Activation activation);
Activation ParseActivation(std::string_view name);

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// First and second moment estimates for one parameter tensor.
struct AdamMoments {
  Vector first;
  Vector second;

  void Resize(std::size_t n);
};

// One bias-corrected Adam update; `step` is the 1-based step count.
void AdamUpdate(std::span<double> params, std::span<const double> grads, AdamMoments& moments,
                long step, const AdamOptions& options);

struct DenseLayer {
  Matrix weight;  // fan_in x fan_out; the layer computes act(x W + b)
  Vector bias;
  Activation activation = Activation::kLinear;
  AdamMoments weight_moments;
  AdamMoments bias_moments;
};

struct ForwardCache {
  std::vector<Matrix> inputs;   // input to each layer
  std::vector<Matrix> outputs;  // post-activation output of each layer
};

struct DenseGradients {
  std::vector<Matrix> weight;
  std::vector<Vector> bias;
  Matrix input;  // d loss / d network input

  DenseGradients& operator+=(const DenseGradients& other);
  DenseGradients& operator*=(double scale);
};

// Fully connected feed-forward network with per-parameter Adam state.
class DenseNet {
 public:
  DenseNet() = default;

  // widths has one more entry than activations: widths[0] is the input width.
  // Weights are Glorot-uniform, biases zero.
  static DenseNet Create(std::span<const std::size_t> widths,
                         std::span<const Activation> activations, std::uint64_t seed);

  // Adopts trained weights (e.g. from a checkpoint) with fresh Adam state.
  static DenseNet FromLayers(std::vector<DenseLayer> layers);

  std::size_t input_width() const;
  std::size_t output_width() const;
  std::size_t parameter_count() const;

  std::vector<DenseLayer>& layers() { return layers_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  long adam_step() const { return adam_step_; }
  // Zeroes the moment estimates and the step count.
  void ResetOptimizer();

  // Throws unless consecutive layer widths chain and Adam state matches.
  void Validate() const;

 private:
  friend void AdamStep(DenseNet& net, const DenseGradients& grads, const AdamOptions& options);

  std::vector<DenseLayer> layers_;
  long adam_step_ = 0;
};

Matrix Forward(const DenseNet& net, const Matrix& x, ForwardCache* cache = nullptr);
DenseGradients Backward(const DenseNet& net, const ForwardCache& cache, const Matrix& grad_output);
void AdamStep(DenseNet& net, const DenseGradients& grads, const AdamOptions& options);

}  // namespace vfkt::numerics
