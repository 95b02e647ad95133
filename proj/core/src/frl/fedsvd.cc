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

#include "vfkt/frl/fedsvd.h"

#include <algorithm>

#include <numeric>

#include "vfkt/error.h"
#include "vfkt/numerics/linalg.h"
#include "vfkt/numerics/random.h"

namespace vfkt::frl {

std::vector<MaskPair> FedSvdKeygen(std::size_t overlap_size,
                                   std::span<const std::size_t> feature_sizes, std::uint64_t seed,
                                   std::size_t block_size) {
  VFKT_ENFORCE(overlap_size >= 1, ErrorCode::kInvalidArgument,
               "fedsvd keygen: overlap must hold at least one sample");
  VFKT_ENFORCE(!feature_sizes.empty(), ErrorCode::kInvalidArgument, "fedsvd keygen: no parties");
  const std::size_t total = std::accumulate(feature_sizes.begin(), feature_sizes.end(),
                                            std::size_t{0});
  for (std::size_t s : feature_sizes) {
    VFKT_ENFORCE(s >= 1, ErrorCode::kInvalidArgument, "fedsvd keygen: party with no features");
  }
  const Matrix a =
      numerics::RandomOrthogonal(overlap_size, numerics::DeriveSeed(seed, "fedsvd.A"), block_size);
  const Matrix b =
      numerics::RandomOrthogonal(total, numerics::DeriveSeed(seed, "fedsvd.B"), block_size);
  std::vector<MaskPair> out;
  std::size_t offset = 0;
  for (std::size_t s : feature_sizes) {
    out.push_back(MaskPair{a, numerics::SliceRows(b, offset, offset + s)});
    offset += s;
  }
  return out;
}

Matrix FedSvdMask(const Matrix& h, const MaskPair& masks) {
  VFKT_ENFORCE(masks.a.rows() == masks.a.cols() && masks.a.cols() == h.rows(),
               ErrorCode::kDimensionMismatch, "fedsvd mask: A is {}x{} but H has {} rows",
               masks.a.rows(), masks.a.cols(), h.rows());
  VFKT_ENFORCE(masks.b_slice.rows() == h.cols(), ErrorCode::kDimensionMismatch,
               "fedsvd mask: B_k has {} rows but H has {} columns", masks.b_slice.rows(), h.cols());
  return numerics::MatMul(numerics::MatMul(masks.a, h), masks.b_slice);
}

Matrix FedSvdServer(std::span<const Matrix> masked_parts, std::optional<std::size_t> rank) {
  VFKT_ENFORCE(!masked_parts.empty(), ErrorCode::kInvalidArgument, "fedsvd server: no parts");
  const std::size_t rows = masked_parts.front().rows();
  const std::size_t fed_width = masked_parts.front().cols();
  for (const auto& p : masked_parts) {
    VFKT_ENFORCE(p.rows() == rows, ErrorCode::kDimensionMismatch,
                 "fedsvd server: parts disagree on row count ({} vs {})", p.rows(), rows);
    VFKT_ENFORCE(p.cols() == fed_width, ErrorCode::kDimensionMismatch,
                 "fedsvd server: parts disagree on masked width ({} vs {})", p.cols(), fed_width);
  }
  // Each masked part is A H_k B_k, so the concatenation has rank at most
  // |X_fed|; columns past min(|I|, |X_fed|) carry no signal.
  std::size_t keep = std::min(rows, fed_width);
  if (rank.has_value()) {
    VFKT_ENFORCE(*rank >= 1, ErrorCode::kInvalidArgument, "fedsvd server: rank must be >= 1");
    keep = std::min(keep, *rank);
  }
  numerics::SvdResult svd = numerics::Svd(numerics::HConcat(masked_parts));
  return numerics::SliceCols(svd.u, 0, keep);
}

FederatedRepresentation FedSvdRecover(const Matrix& u_hat, const Matrix& a,
                                      std::vector<data::SampleId> overlapping_ids) {
  VFKT_ENFORCE(a.rows() == a.cols() && a.rows() == u_hat.rows(), ErrorCode::kDimensionMismatch,
               "fedsvd recover: A is {}x{} but U-hat has {} rows", a.rows(), a.cols(),
               u_hat.rows());
  FederatedRepresentation out{numerics::MatMulTN(a, u_hat), FrlMethod::kFedSvd,
                              std::move(overlapping_ids)};
  out.Validate();
  return out;
}

}  // namespace vfkt::frl
