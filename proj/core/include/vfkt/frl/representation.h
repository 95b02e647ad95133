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

#include <string_view>
#include <vector>

#include "vfkt/data/types.h"
#include "vfkt/numerics/matrix.h"

namespace vfkt::frl {

enum class FrlMethod { kFedSvd, kVFedPca };

std::string_view FrlMethodName(FrlMethod method);
FrlMethod ParseFrlMethod(std::string_view name);

// Latent representation of the overlapping samples, held by the task party.
// Row i belongs to overlapping_ids[i].
struct FederatedRepresentation {
  numerics::Matrix matrix;
  FrlMethod method = FrlMethod::kFedSvd;
  std::vector<data::SampleId> overlapping_ids;

  std::size_t rows() const { return matrix.rows(); }
  std::size_t width() const { return matrix.cols(); }
  void Validate() const;
};

}  // namespace vfkt::frl
