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
#include <vector>

namespace vfkt::downstream {

struct SplitSpec {
  double train_fraction = 0.8;
  // When set, the training part keeps only this fraction of all labelled
  // samples (few-shot); the test part is unchanged.
  std::optional<double> few_shot_fraction;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Per-class shuffled split. Every class with >= 2 samples contributes to
// both parts; singleton classes go to training. Indices come back sorted.
SplitIndices StratifiedSplit(const std::vector<int>& labels, const SplitSpec& spec);

}  // namespace vfkt::downstream
