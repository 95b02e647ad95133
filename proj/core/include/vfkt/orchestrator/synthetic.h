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
#include <vector>

#include "vfkt/data/dataset.h"
#include "vfkt/numerics/matrix.h"

namespace vfkt::orchestrator {

// Generative model: every sample has a latent vector
//   z = [shared | task-private | private of hospital 1 | ... ].
// Each party observes a fixed random linear map of the latent coordinates
// it can see, plus Gaussian noise. Labels threshold a linear functional of z
// at equal-mass quantiles.
struct SyntheticSpec {
  std::size_t task_rows = 4000;     // includes the overlapping rows
  std::size_t overlap_rows = 1000;  // shared by the task party and every hospital
  std::size_t data_only_rows = 0;   // extra rows per hospital
  std::size_t task_features = 8;
  std::vector<std::size_t> data_features{8};  // one entry per data hospital
  std::size_t shared_latent = 2;
  std::size_t task_latent = 4;
  std::size_t data_latent = 2;  // per hospital
  // Loading scale of the shared coordinates in each party's features.
  double task_signal = 1.0;
  double data_signal = 1.0;
  double noise = 0.5;
  // Weights over all latent coordinates in the order above; empty puts unit
  // weight on every shared coordinate.
  std::vector<double> label_weights;
  int num_classes = 2;
  std::uint64_t seed = 0;

  std::size_t latent_width() const;
  void Validate() const;
};

struct SyntheticData {
  data::Dataset dataset;
  numerics::Matrix latent;  // one row per sample id, in id order
};

// Task party "task", hospitals "hospital1", "hospital2", ...; sample ids
// "s000000", ... with overlapping ids first. Deterministic in spec.seed.
SyntheticData GenerateSynthetic(const SyntheticSpec& spec);

}  // namespace vfkt::orchestrator
