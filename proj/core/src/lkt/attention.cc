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

#include "vfkt/lkt/attention.h"

#include <cmath>

#include "vfkt/error.h"
#include "vfkt/numerics/linalg.h"

namespace vfkt::lkt {

using numerics::MatMul;
using numerics::MatMulNT;
using numerics::MatMulTN;

Matrix CrossAttention(const Matrix& query, const Matrix& h_fed, const Matrix& phi,
                      AttentionCache* cache) {
  VFKT_ENFORCE(h_fed.cols() == phi.rows(), ErrorCode::kDimensionMismatch,
               "attention: H_fed has {} columns but phi has {} rows", h_fed.cols(), phi.rows());
  VFKT_ENFORCE(query.cols() == phi.cols(), ErrorCode::kDimensionMismatch,
               "attention: query width {} does not match phi width {}", query.cols(), phi.cols());
  VFKT_ENFORCE(h_fed.rows() >= 1, ErrorCode::kInvalidArgument, "attention: no keys");
  const double scale = 1.0 / std::sqrt(static_cast<double>(phi.cols()));
  Matrix values = MatMul(h_fed, phi);
  Matrix scores = MatMulNT(query, values);
  scores *= scale;
  Matrix weights = numerics::SoftmaxRows(scores);
  Matrix out = MatMul(weights, values);
  if (cache != nullptr) {
    cache->query = query;
    cache->values = std::move(values);
    cache->weights = std::move(weights);
    cache->scale = scale;
  }
  return out;
}

AttentionGradients CrossAttentionBackward(const AttentionCache& cache, const Matrix& h_fed,
                                          const Matrix& grad_output) {
  const Matrix& p = cache.weights;
  const Matrix& v = cache.values;
  VFKT_ENFORCE(grad_output.rows() == p.rows() && grad_output.cols() == v.cols(),
               ErrorCode::kDimensionMismatch, "attention backward: gradient shape {}x{}",
               grad_output.rows(), grad_output.cols());
  // Z = P V: dP = dZ V^T, dV = P^T dZ.
  Matrix grad_p = MatMulNT(grad_output, v);
  Matrix grad_v = MatMulTN(p, grad_output);
  // Softmax: dS = P * (dP - rowsum(dP * P)).
  Matrix grad_s(p.rows(), p.cols());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < p.cols(); ++j) dot += grad_p(i, j) * p(i, j);
    for (std::size_t j = 0; j < p.cols(); ++j) {
      grad_s(i, j) = p(i, j) * (grad_p(i, j) - dot) * cache.scale;
    }
  }
  // S = Q V^T (scaled): dQ = dS V, and V receives dS^T Q as keys.
  AttentionGradients out;
  out.query = MatMul(grad_s, v);
  grad_v += MatMulTN(grad_s, cache.query);
  out.phi = MatMulTN(h_fed, grad_v);
  return out;
}

}  // namespace vfkt::lkt
