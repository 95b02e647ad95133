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

#include <cstdint>
#include <string_view>
#include <vector>

#include "vfkt/numerics/dense_net.h"
#include "vfkt/numerics/matrix.h"

namespace vfkt::downstream {

using numerics::Matrix;

enum class ClassifierKind { kLogistic, kMlp };

std::string_view ClassifierKindName(ClassifierKind kind);
ClassifierKind ParseClassifierKind(std::string_view name);

struct ClassifierOptions {
  int epochs = 100;
  std::size_t batch_size = 32;
  double learning_rate = 1e-2;
  double l2 = 1e-4;  // weight decay on weights, not biases
};

// Softmax classifier over internally standardized inputs. Logistic is a
// single linear layer; the MLP adds two ReLU layers of width 32.
class Classifier {
 public:
  ClassifierKind kind() const { return kind_; }
  int num_classes() const { return num_classes_; }
  std::size_t input_width() const { return net_.input_width(); }
  const numerics::DenseNet& net() const { return net_; }

  Matrix Probabilities(const Matrix& x) const;
  std::vector<int> Predict(const Matrix& x) const;

 private:
  friend Classifier TrainClassifier(const Matrix& x, const std::vector<int>& labels,
                                    int num_classes, ClassifierKind kind, std::uint64_t seed,
                                    const ClassifierOptions& options);

  Matrix Standardized(const Matrix& x) const;

  ClassifierKind kind_ = ClassifierKind::kLogistic;
  int num_classes_ = 0;
  numerics::DenseNet net_;
  std::vector<double> mean_;
  std::vector<double> scale_;  // 1/stddev; 0 for constant columns
};

// Throws Error(kInvalidArgument) when fewer than two classes occur in
// `labels` or rows are misaligned. Deterministic for a fixed seed.
Classifier TrainClassifier(const Matrix& x, const std::vector<int>& labels, int num_classes,
                           ClassifierKind kind, std::uint64_t seed,
                           const ClassifierOptions& options = {});

// Fraction of correct predictions. Throws on an empty or misaligned set.
double Accuracy(const std::vector<int>& predicted, const std::vector<int>& labels);
double Evaluate(const Classifier& classifier, const Matrix& x, const std::vector<int>& labels);

}  // namespace vfkt::downstream
