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

#include "vfkt/lkt/mine.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vfkt/error.h"
#include "vfkt/hash.h"
#include "vfkt/numerics/random.h"

namespace vfkt::lkt {

using numerics::Activation;

DenseNet CreateMineNet(std::size_t latent_width, std::span<const std::size_t> hidden_widths,
                       std::uint64_t seed) {
  VFKT_ENFORCE(latent_width >= 1, ErrorCode::kInvalidArgument, "mine: latent width must be >= 1");
  std::vector<std::size_t> widths{2 * latent_width};
  std::vector<Activation> acts;
  for (std::size_t h : hidden_widths) {
    widths.push_back(h);
    acts.push_back(Activation::kRelu);
  }
  widths.push_back(1);
  acts.push_back(Activation::kLinear);
  return DenseNet::Create(widths, acts, seed);
}

MinePairing PairRows(const Matrix& key, std::uint64_t seed) {
  const std::size_t n = key.rows();
  const std::uint64_t state = Fnv1a64(std::to_string(seed));
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed(n);
  for (std::size_t i = 0; i < n; ++i) keyed[i] = {Fnv1a64(key.row(i), state), i};
  // Rows with equal hashes are identical in content, so ties cannot change
  // the estimate.
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  MinePairing out;
  out.order.reserve(n);
  for (const auto& k : keyed) out.order.push_back(k.second);
  return out;
}

namespace {

Matrix BuildInput(const Matrix& p, const Matrix& q, const std::vector<std::size_t>& order,
                  std::size_t shift) {
  const std::size_t n = order.size();
  const std::size_t d = p.cols();
  Matrix in(n, 2 * d);
  for (std::size_t k = 0; k < n; ++k) {
    const auto pr = p.row(order[k]);
    const auto qr = q.row(order[(k + shift) % n]);
    std::copy(pr.begin(), pr.end(), in.row(k).begin());
    std::copy(qr.begin(), qr.end(), in.row(k).begin() + static_cast<std::ptrdiff_t>(d));
  }
  return in;
}

double LogMeanExp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc / static_cast<double>(v.size()));
}

}  // namespace

MineEvaluation EvaluateMine(const DenseNet& mine, const Matrix& p, const Matrix& q,
                            const MinePairing& pairing) {
  VFKT_ENFORCE(p.rows() == q.rows() && p.cols() == q.cols(), ErrorCode::kDimensionMismatch,
               "mine: p is {}x{} but q is {}x{}", p.rows(), p.cols(), q.rows(), q.cols());
  VFKT_ENFORCE(p.rows() >= 2, ErrorCode::kInvalidArgument,
               "mine: at least 2 samples are needed, got {}", p.rows());
  VFKT_ENFORCE(pairing.order.size() == p.rows(), ErrorCode::kDimensionMismatch,
               "mine: pairing covers {} rows, batch has {}", pairing.order.size(), p.rows());
  VFKT_ENFORCE(mine.input_width() == 2 * p.cols(), ErrorCode::kDimensionMismatch,
               "mine: network expects {} inputs, got 2x{}", mine.input_width(), p.cols());
  MineEvaluation eval;
  eval.joint_input = BuildInput(p, q, pairing.order, 0);
  eval.marginal_input = BuildInput(p, q, pairing.order, 1);
  const Matrix tj = Forward(mine, eval.joint_input, &eval.joint_cache);
  const Matrix tm = Forward(mine, eval.marginal_input, &eval.marginal_cache);
  eval.joint_scores.assign(tj.data().begin(), tj.data().end());
  eval.marginal_scores.assign(tm.data().begin(), tm.data().end());
  double joint_sum = 0.0;
  for (double t : eval.joint_scores) joint_sum += t;
  eval.bound = joint_sum / static_cast<double>(eval.joint_scores.size()) -
               LogMeanExp(eval.marginal_scores);
  return eval;
}

MineGradients MineBackward(const DenseNet& mine, const MineEvaluation& eval,
                           const MinePairing& pairing) {
  const std::size_t n = eval.joint_scores.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  // d(-bound)/dT: -1/N on joint scores, softmax of marginal scores.
  Matrix seed_joint(n, 1);
  Matrix seed_marginal(n, 1);
  const double m = *std::max_element(eval.marginal_scores.begin(), eval.marginal_scores.end());
  double z = 0.0;
  for (double t : eval.marginal_scores) z += std::exp(t - m);
  for (std::size_t k = 0; k < n; ++k) {
    seed_joint(k, 0) = -inv_n;
    seed_marginal(k, 0) = std::exp(eval.marginal_scores[k] - m) / z;
  }
  MineGradients out;
  out.net = Backward(mine, eval.joint_cache, seed_joint);
  const numerics::DenseGradients marginal = Backward(mine, eval.marginal_cache, seed_marginal);
  const Matrix joint_input_grad = out.net.input;
  out.net += marginal;

  const std::size_t d = eval.joint_input.cols() / 2;
  out.p = Matrix(n, d);
  out.q = Matrix(n, d);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t row = pairing.order[k];
    const std::size_t shifted = pairing.order[(k + 1) % n];
    for (std::size_t j = 0; j < d; ++j) {
      out.p(row, j) += joint_input_grad(k, j) + marginal.input(k, j);
      out.q(row, j) += joint_input_grad(k, d + j);
      out.q(shifted, j) += marginal.input(k, d + j);
    }
  }
  return out;
}

double MineEstimate(const DenseNet& mine, const Matrix& p, const Matrix& q, std::uint64_t seed) {
  VFKT_ENFORCE(p.rows() >= 2, ErrorCode::kInvalidArgument,
               "mine: at least 2 samples are needed, got {}", p.rows());
  VFKT_ENFORCE(p.rows() == q.rows(), ErrorCode::kDimensionMismatch,
               "mine: p has {} rows but q has {}", p.rows(), q.rows());
  return EvaluateMine(mine, p, q, PairRows(numerics::HConcat(p, q), seed)).bound;
}

std::vector<double> TrainMine(DenseNet& mine, const Matrix& p, const Matrix& q,
                              const MineTrainOptions& options) {
  VFKT_ENFORCE(options.steps >= 0, ErrorCode::kInvalidArgument, "mine: negative step count");
  const std::size_t n = p.rows();
  const std::size_t batch = options.batch_size == 0 ? n : std::min(options.batch_size, n);
  const Matrix key = numerics::HConcat(p, q);
  numerics::Rng rng(numerics::DeriveSeed(options.seed, "mine.batches"));
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(options.steps));
  for (int step = 0; step < options.steps; ++step) {
    const std::uint64_t pair_seed = numerics::DeriveSeed(options.seed, "mine.pairing",
                                                         static_cast<std::uint64_t>(step));
    MineEvaluation eval;
    MinePairing pairing;
    if (batch == n) {
      pairing = PairRows(key, pair_seed);
      eval = EvaluateMine(mine, p, q, pairing);
    } else {
      std::vector<std::size_t> perm = rng.Permutation(n);
      perm.resize(batch);
      const Matrix bp = numerics::SelectRows(p, perm);
      const Matrix bq = numerics::SelectRows(q, perm);
      pairing = PairRows(numerics::SelectRows(key, perm), pair_seed);
      eval = EvaluateMine(mine, bp, bq, pairing);
    }
    VFKT_ENFORCE(std::isfinite(eval.bound), ErrorCode::kDiverged,
                 "mine: bound is not finite at step {} (seed {})", step, options.seed);
    history.push_back(eval.bound);
    const MineGradients grads = MineBackward(mine, eval, pairing);
    AdamStep(mine, grads.net, options.adam);
  }
  return history;
}

}  // namespace vfkt::lkt
