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

#include "vfkt/numerics/matrix.h"

namespace vfkt::lkt {

using numerics::Matrix;

struct AttentionCache {
  Matrix query;    // batch x d
  Matrix values;   // H_fed * phi, |I| x d; used as both keys and values
  Matrix weights;  // batch x |I|, rows sum to one
  double scale = 1.0;
};

// Z = softmax(Q (H_fed phi)^T / sqrt(d)) (H_fed phi), d = phi.cols().
Matrix CrossAttention(const Matrix& query, const Matrix& h_fed, const Matrix& phi,
                      AttentionCache* cache = nullptr);

struct AttentionGradients {
  Matrix query;
  Matrix phi;
};

AttentionGradients CrossAttentionBackward(const AttentionCache& cache, const Matrix& h_fed,
                                          const Matrix& grad_output);

}  // namespace vfkt::lkt
