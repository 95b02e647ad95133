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

#include "vfkt/downstream/classifier.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "vfkt/error.h"
#include "vfkt/numerics/linalg.h"
#include "vfkt/numerics/random.h"

namespace vfkt::downstream {

using numerics::Activation;

std::string_view ClassifierKindName(ClassifierKind kind) {
  return kind == ClassifierKind::kLogistic ? "logistic" : "mlp";
}

ClassifierKind ParseClassifierKind(std::string_view name) {
  if (name == "logistic") return ClassifierKind::kLogistic;
  if (name == "mlp") return ClassifierKind::kMlp;
  Throw(ErrorCode::kInvalidArgument, "unknown classifier '{}' (expected logistic or mlp)", name);
}

Matrix Classifier::Standardized(const Matrix& x) const {
  VFKT_ENFORCE(x.cols() == mean_.size(), ErrorCode::kDimensionMismatch,
               "classifier expects {} features, got {}", mean_.size(), x.cols());
  Matrix out = x;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = (out(i, j) - mean_[j]) * scale_[j];
  }
  return out;
}

Matrix Classifier::Probabilities(const Matrix& x) const {
  return numerics::SoftmaxRows(numerics::Forward(net_, Standardized(x)));
}

std::vector<int> Classifier::Predict(const Matrix& x) const {
  const Matrix logits = numerics::Forward(net_, Standardized(x));
  std::vector<int> out(logits.rows());
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    int best = 0;
    for (std::size_t c = 1; c < logits.cols(); ++c) {
      if (logits(i, c) > logits(i, best)) best = static_cast<int>(c);
    }
    out[i] = best;
  }
  return out;
}

Classifier TrainClassifier(const Matrix& x, const std::vector<int>& labels, int num_classes,
                           ClassifierKind kind, std::uint64_t seed,
                           const ClassifierOptions& options) {
  VFKT_ENFORCE(x.rows() == labels.size(), ErrorCode::kDimensionMismatch,
               "classifier: {} feature rows but {} labels", x.rows(), labels.size());
  VFKT_ENFORCE(x.cols() >= 1, ErrorCode::kInvalidArgument, "classifier needs >= 1 feature");
  VFKT_ENFORCE(options.epochs >= 1 && options.batch_size >= 1 && options.learning_rate > 0 &&
                   options.l2 >= 0,
               ErrorCode::kInvalidArgument, "invalid classifier training options");
  std::set<int> present;
  for (int y : labels) {
    VFKT_ENFORCE(y >= 0 && y < num_classes, ErrorCode::kInvalidArgument,
                 "label {} outside [0, {})", y, num_classes);
    present.insert(y);
  }
  VFKT_ENFORCE(present.size() >= 2, ErrorCode::kInvalidArgument,
               "training set contains a single class; need at least two");

  Classifier c;
  c.kind_ = kind;
  c.num_classes_ = num_classes;
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  c.mean_.assign(d, 0.0);
  c.scale_.assign(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += x(i, j);
    c.mean_[j] = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (x(i, j) - c.mean_[j]) * (x(i, j) - c.mean_[j]);
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    c.scale_[j] = sd > 1e-12 ? 1.0 / sd : 0.0;
  }

  const auto k = static_cast<std::size_t>(num_classes);
  if (kind == ClassifierKind::kLogistic) {
    const std::array<std::size_t, 2> widths{d, k};
    const std::array<Activation, 1> acts{Activation::kLinear};
    c.net_ = numerics::DenseNet::Create(widths, acts, numerics::DeriveSeed(seed, "classifier"));
  } else {
    const std::array<std::size_t, 4> widths{d, 32, 32, k};
    const std::array<Activation, 3> acts{Activation::kRelu, Activation::kRelu,
                                         Activation::kLinear};
    c.net_ = numerics::DenseNet::Create(widths, acts, numerics::DeriveSeed(seed, "classifier"));
  }

  const Matrix xs = c.Standardized(x);
  numerics::Rng rng(numerics::DeriveSeed(seed, "classifier.batches"));
  numerics::AdamOptions adam;
  adam.learning_rate = options.learning_rate;
  const std::size_t batch = std::min(options.batch_size, n);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const std::vector<std::size_t> order = rng.Permutation(n);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      const std::span<const std::size_t> idx(order.data() + start, end - start);
      const Matrix xb = numerics::SelectRows(xs, idx);
      numerics::ForwardCache cache;
      Matrix grad = numerics::SoftmaxRows(numerics::Forward(c.net_, xb, &cache));
      const double inv = 1.0 / static_cast<double>(idx.size());
      for (std::size_t r = 0; r < idx.size(); ++r) {
        grad(r, static_cast<std::size_t>(labels[idx[r]])) -= 1.0;
        for (std::size_t j = 0; j < k; ++j) grad(r, j) *= inv;
      }
      numerics::DenseGradients g = numerics::Backward(c.net_, cache, grad);
      for (std::size_t l = 0; l < g.weight.size(); ++l) {
        const Matrix& w = c.net_.layers()[l].weight;
        for (std::size_t i = 0; i < w.rows(); ++i) {
          for (std::size_t j = 0; j < w.cols(); ++j) g.weight[l](i, j) += options.l2 * w(i, j);
        }
      }
      numerics::AdamStep(c.net_, g, adam);
    }
  }
  return c;
}

double Accuracy(const std::vector<int>& predicted, const std::vector<int>& labels) {
  VFKT_ENFORCE(!labels.empty(), ErrorCode::kInvalidArgument, "accuracy over an empty test set");
  VFKT_ENFORCE(predicted.size() == labels.size(), ErrorCode::kDimensionMismatch,
               "{} predictions for {} labels", predicted.size(), labels.size());
  std::size_t correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) correct += predicted[i] == labels[i];
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

double Evaluate(const Classifier& classifier, const Matrix& x, const std::vector<int>& labels) {
  VFKT_ENFORCE(!labels.empty(), ErrorCode::kInvalidArgument, "evaluate on an empty test set");
  VFKT_ENFORCE(x.rows() == labels.size(), ErrorCode::kDimensionMismatch,
               "evaluate: {} feature rows but {} labels", x.rows(), labels.size());
  return Accuracy(classifier.Predict(x), labels);
}

}  // namespace vfkt::downstream
