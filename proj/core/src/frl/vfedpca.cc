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

#include "vfkt/frl/vfedpca.h"

#include <cmath>

#include "vfkt/error.h"
#include "vfkt/numerics/linalg.h"
#include "vfkt/numerics/random.h"

namespace vfkt::frl {

Vector VFedPcaInit(std::size_t overlap_size, std::uint64_t seed) {
  numerics::Rng rng(numerics::DeriveSeed(seed, "vfedpca.init"));
  Vector v(overlap_size);
  for (double& x : v) x = rng.Normal();
  return v;
}

EigenShare VFedPcaLocal(const Matrix& h, int iterations, std::span<const double> init) {
  VFKT_ENFORCE(h.cols() >= 1, ErrorCode::kInvalidArgument, "vfedpca: party has no features");
  VFKT_ENFORCE(init.size() == h.rows(), ErrorCode::kDimensionMismatch,
               "vfedpca: init of length {} for {} samples", init.size(), h.rows());
  const double scale = 1.0 / static_cast<double>(h.cols());
  const auto gram = [&h, scale](std::span<const double> x) {
    Vector y = numerics::MatVec(h, numerics::MatTVec(h, x));
    for (double& v : y) v *= scale;
    return y;
  };
  const auto r = numerics::PowerIteration(gram, h.rows(), iterations, init);
  return EigenShare{r.eigvec, std::max(0.0, r.eigval), r.zero_operator};
}

void AlignShareSigns(std::span<EigenShare> shares) {
  if (shares.empty()) return;
  const Vector reference = shares.front().eigvec;
  for (auto& s : shares) {
    if (numerics::Dot(s.eigvec, reference) < 0.0) {
      for (double& v : s.eigvec) v = -v;
    }
  }
}

AggregateResult VFedPcaAggregate(std::span<const EigenShare> shares) {
  VFKT_ENFORCE(!shares.empty(), ErrorCode::kInvalidArgument, "vfedpca aggregate: no shares");
  const std::size_t n = shares.front().eigvec.size();
  double total = 0.0;
  for (const auto& s : shares) {
    VFKT_ENFORCE(s.eigvec.size() == n, ErrorCode::kDimensionMismatch,
                 "vfedpca aggregate: eigvec lengths differ");
    VFKT_ENFORCE(s.eigval >= 0.0, ErrorCode::kInvalidArgument,
                 "vfedpca aggregate: negative eigenvalue {}", s.eigval);
    total += s.eigval;
  }
  VFKT_ENFORCE(total > 0.0, ErrorCode::kDegenerate,
               "vfedpca aggregate: every eigenvalue is zero");
  AggregateResult out;
  out.u.assign(n, 0.0);
  for (const auto& s : shares) {
    const double w = s.eigval / total;
    out.weights.push_back(w);
    for (std::size_t i = 0; i < n; ++i) out.u[i] += w * s.eigvec[i];
  }
  out.degenerate = numerics::Norm2(out.u) <= 1e-12;
  return out;
}

Matrix VFedPcaReconstruct(const Matrix& h_task_overlap, std::span<const double> u) {
  VFKT_ENFORCE(u.size() == h_task_overlap.rows(), ErrorCode::kDimensionMismatch,
               "vfedpca reconstruct: u of length {} for {} overlapping samples", u.size(),
               h_task_overlap.rows());
  const Vector m = numerics::MatTVec(h_task_overlap, u);
  const Matrix mm = numerics::MatMulNT(Matrix::ColumnVector(m), Matrix::ColumnVector(m));
  const double norm = numerics::FrobeniusNorm(mm);
  VFKT_ENFORCE(norm > 0.0, ErrorCode::kDegenerate,
               "vfedpca reconstruct: M = H^T u vanishes (u is orthogonal to the task columns)");
  return (1.0 / norm) * numerics::MatMul(h_task_overlap, mm);
}

}  // namespace vfkt::frl
