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
#include <optional>
#include <span>
#include <vector>

#include "vfkt/frl/representation.h"
#include "vfkt/numerics/matrix.h"

namespace vfkt::frl {

using numerics::Matrix;

// Masks handed to one party by the key generator: the shared row mask A and
// the party's horizontal slice of the column mask B.
struct MaskPair {
  Matrix a;        // |I| x |I|, orthogonal
  Matrix b_slice;  // |X_k| x |X_fed|; stacking all slices gives orthogonal B
};

// Draws A (|I| x |I|) and B (|X_fed| x |X_fed|), |X_fed| = sum of
// feature_sizes, and slices B by party. block_size > 0 draws block-diagonal
// masks (see numerics::RandomOrthogonal).
std::vector<MaskPair> FedSvdKeygen(std::size_t overlap_size,
                                   std::span<const std::size_t> feature_sizes, std::uint64_t seed,
                                   std::size_t block_size = 0);

// A * H_k * B_k.
Matrix FedSvdMask(const Matrix& h, const MaskPair& masks);

// Left singular vectors of the horizontally concatenated masked parts. Only
// U-hat leaves the server; rank, when set, keeps the leading columns.
Matrix FedSvdServer(std::span<const Matrix> masked_parts,
                    std::optional<std::size_t> rank = std::nullopt);

// U = A^T U-hat: the left singular vectors of the unmasked concatenation.
FederatedRepresentation FedSvdRecover(const Matrix& u_hat, const Matrix& a,
                                      std::vector<data::SampleId> overlapping_ids);

}  // namespace vfkt::frl
