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
#include <vector>

#include "vfkt/numerics/dense_net.h"

namespace vfkt::lkt {

using numerics::DenseNet;
using numerics::Matrix;

// Statistics network T(p, q): 2d -> 64 -> 64 -> 1 with relu hidden layers.
DenseNet CreateMineNet(std::size_t latent_width, std::span<const std::size_t> hidden_widths,
                       std::uint64_t seed);

// Joint and marginal row pairing for one estimate. Rows are visited in
// `order`; joint pair k is (p[order[k]], q[order[k]]) and marginal pair k is
// (p[order[k]], q[order[k + 1 mod N]]), so no row is paired with itself.
// `order` sorts rows by a seeded hash of their content, which makes the
// estimate exactly invariant to permuting the rows of (p, q) jointly.
struct MinePairing {
  std::vector<std::size_t> order;
};

// Hashes the rows of `key` (any matrix row-aligned with p and q).
MinePairing PairRows(const Matrix& key, std::uint64_t seed);

struct MineEvaluation {
  double bound = 0.0;  // Donsker-Varadhan lower bound, nats
  Matrix joint_input;
  Matrix marginal_input;
  numerics::ForwardCache joint_cache;
  numerics::ForwardCache marginal_cache;
  std::vector<double> joint_scores;
  std::vector<double> marginal_scores;
};

MineEvaluation EvaluateMine(const DenseNet& mine, const Matrix& p, const Matrix& q,
                            const MinePairing& pairing);

struct MineGradients {
  numerics::DenseGradients net;  // of -bound, for descent on the statistics net
  Matrix p;                      // d(-bound)/dp
  Matrix q;                      // d(-bound)/dq
};

MineGradients MineBackward(const DenseNet& mine, const MineEvaluation& eval,
                           const MinePairing& pairing);

// mean T(p, q) - log mean exp T(p, q') with the pairing drawn from `seed`.
// Throws Error(kInvalidArgument) when fewer than two rows are given.
double MineEstimate(const DenseNet& mine, const Matrix& p, const Matrix& q, std::uint64_t seed);

struct MineTrainOptions {
  int steps = 2000;
  std::size_t batch_size = 0;  // 0 uses every row each step
  numerics::AdamOptions adam;
  std::uint64_t seed = 0;
};

// Gradient ascent on the bound. Each step draws a fresh pairing. Returns the
// bound after every step.
std::vector<double> TrainMine(DenseNet& mine, const Matrix& p, const Matrix& q,
                              const MineTrainOptions& options);

}  // namespace vfkt::lkt
