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
#include <string>
#include <vector>

#include "vfkt/data/types.h"
#include "vfkt/lkt/model.h"

namespace vfkt::lkt {

// Per-epoch means of the batch losses.
struct TrainingHistory {
  std::vector<double> total;
  std::vector<double> recons;
  std::vector<double> mi;
};

struct TrainedPair {
  LktModel model;
  TrainingHistory history;
};

// Trains one task/data-hospital pair model. `non_overlap` holds the rows to
// be augmented; `overlap` holds the task party's overlapping rows with the
// same columns and is required for ReconstructionSource::kOverlap (it may
// be empty otherwise); `h_fed` is the federated representation of the
// overlap. Each step descends L on encoder, decoder and phi and ascends the
// MI estimate on the statistics network, from one shared forward pass.
//
// Throws Error(kDiverged) naming the seed and epoch if the loss becomes
// non-finite.
TrainedPair TrainLkt(const data::FeatureMatrix& non_overlap, const Matrix& overlap,
                     const Matrix& h_fed, const LktConfig& config, std::uint64_t seed,
                     std::string hospital);

struct FineTuneResult {
  std::vector<double> loss;  // per epoch, mean over pairs and batches
  double redundancy_before = 0.0;
  double redundancy_after = 0.0;
};

// Contrastive fine-tuning of every pair's encoder. Targets Z_k are computed
// once from the incoming models; only encoders change. `h_feds[k]` is the
// federated representation pair k was trained with.
FineTuneResult FineTuneContrastive(std::span<LktModel> models, const data::FeatureMatrix& non_overlap,
                                   std::span<const Matrix> h_feds, const LktConfig& config,
                                   std::uint64_t seed);

// Mean over encoder pairs (i < j) of the mean row |cos(Enc_i(x), Enc_j(x))|;
// 0 with fewer than two models.
double RedundancyStatistic(std::span<const LktModel> models, const Matrix& x);

// Task rows with the learned encodings appended: [raw | Enc_1 | ... | Enc_n].
struct AugmentedFeatures {
  data::FeatureMatrix features;
  std::vector<std::string> provenance;  // hospital of each appended block
};

// Throws Error(kSchemaMismatch) unless every model was trained on x's
// columns.
AugmentedFeatures Augment(std::span<const LktModel> models, const data::FeatureMatrix& x);

// Inference for rows that arrive after training. Runs locally and uses no
// communication; identical to Augment.
AugmentedFeatures ApplyToNewSamples(std::span<const LktModel> models,
                                    const data::FeatureMatrix& x_new);

}  // namespace vfkt::lkt
