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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vfkt/lkt/model.h"

namespace vfkt::lkt {

inline constexpr int kCheckpointVersion = 1;

// Everything the task party needs to augment new rows or to add a data
// hospital later: per pair, the model before and after contrastive
// fine-tuning and the federated representation it was trained with.
struct CheckpointPair {
  std::string hospital;
  Matrix h_fed;
  LktModel pretrained;
  LktModel finetuned;
};

struct LktCheckpoint {
  std::string config_hash;
  double recon_weight = 1.0;
  double mi_weight = 0.0;
  double tau = 0.5;
  std::vector<std::string> input_columns;
  std::vector<CheckpointPair> pairs;

  std::vector<LktModel> FinetunedModels() const;
};

// JSON container; doubles are written with round-trip precision.
void SaveCheckpoint(const std::filesystem::path& path, const LktCheckpoint& checkpoint);

// Throws Error(kIo) when unreadable, Error(kParse) on malformed content and
// Error(kSchemaMismatch) on an unknown version, inconsistent widths, or
// when expected_columns is given and differs from the stored schema.
LktCheckpoint LoadCheckpoint(const std::filesystem::path& path,
                             const std::optional<std::vector<std::string>>& expected_columns =
                                 std::nullopt);

}  // namespace vfkt::lkt
