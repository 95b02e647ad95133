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

#include "vfkt/frl/representation.h"

#include "vfkt/error.h"

namespace vfkt::frl {

std::string_view FrlMethodName(FrlMethod method) {
  return method == FrlMethod::kFedSvd ? "fedsvd" : "vfedpca";
}

FrlMethod ParseFrlMethod(std::string_view name) {
  if (name == "fedsvd") return FrlMethod::kFedSvd;
  if (name == "vfedpca") return FrlMethod::kVFedPca;
  Throw(ErrorCode::kParse, "unknown FRL method '{}' (expected fedsvd or vfedpca)", name);
}

void FederatedRepresentation::Validate() const {
  VFKT_ENFORCE(matrix.rows() == overlapping_ids.size(), ErrorCode::kDimensionMismatch,
               "federated representation has {} rows for {} overlapping ids", matrix.rows(),
               overlapping_ids.size());
  VFKT_ENFORCE(matrix.AllFinite(), ErrorCode::kInvalidArgument,
               "federated representation has non-finite entries");
}

}  // namespace vfkt::frl
