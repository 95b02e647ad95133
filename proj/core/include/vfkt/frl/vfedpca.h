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
#include <span>
#include <vector>

#include "vfkt/numerics/matrix.h"

namespace vfkt::frl {

using numerics::Matrix;
using numerics::Vector;

// Dominant eigenpair of a party's sample-space Gram matrix, uploaded to the
// aggregation server.
struct EigenShare {
  Vector eigvec;  // unit norm, length |I|
  double eigval = 0.0;
  bool zero_data = false;
};

// Deterministic, shared starting vector for the local power iterations.
Vector VFedPcaInit(std::size_t overlap_size, std::uint64_t seed);

// Power iteration on A_k = H_k H_k^T / |X_k| (an |I| x |I| operator, never
// formed explicitly). A zero H_k yields eigval 0, the normalized init, and
// zero_data set.
EigenShare VFedPcaLocal(const Matrix& h, int iterations, std::span<const double> init);

// Flips shares so each has a non-negative inner product with the first one.
void AlignShareSigns(std::span<EigenShare> shares);

struct AggregateResult {
  Vector u;
  std::vector<double> weights;  // delta_k / sum(delta)
  bool degenerate = false;      // u vanished through cancellation
};

// u = sum_k w_k a_k with w_k = delta_k / sum_j delta_j; u is not normalized.
// Throws when every eigenvalue is zero.
AggregateResult VFedPcaAggregate(std::span<const EigenShare> shares);

// H_t (M M^T) / ||M M^T||_F with M = H_t^T u. Throws Error(kDegenerate)
// when M vanishes.
Matrix VFedPcaReconstruct(const Matrix& h_task_overlap, std::span<const double> u);

}  // namespace vfkt::frl
