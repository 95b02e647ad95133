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

#include "vfkt/downstream/split.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "vfkt/error.h"
#include "vfkt/numerics/random.h"

namespace vfkt::downstream {

void SplitSpec::Validate() const {
  VFKT_ENFORCE(train_fraction > 0.0 && train_fraction < 1.0, ErrorCode::kInvalidArgument,
               "train_fraction must lie in (0, 1), got {}", train_fraction);
  if (few_shot_fraction) {
    VFKT_ENFORCE(*few_shot_fraction > 0.0 && *few_shot_fraction <= train_fraction,
                 ErrorCode::kInvalidArgument,
                 "few_shot_fraction must lie in (0, train_fraction], got {}", *few_shot_fraction);
  }
}

SplitIndices StratifiedSplit(const std::vector<int>& labels, const SplitSpec& spec) {
  spec.Validate();
  VFKT_ENFORCE(labels.size() >= 2, ErrorCode::kInvalidArgument,
               "cannot split {} samples", labels.size());
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  numerics::Rng rng(numerics::DeriveSeed(spec.seed, "split"));
  SplitIndices out;
  for (auto& [label, members] : by_class) {
    const std::vector<std::size_t> order = rng.Permutation(members.size());
    const auto n = static_cast<double>(members.size());
    std::size_t n_train = members.size();
    if (members.size() >= 2) {
      n_train = static_cast<std::size_t>(std::llround(spec.train_fraction * n));
      n_train = std::clamp<std::size_t>(n_train, 1, members.size() - 1);
    }
    std::size_t n_keep = n_train;
    if (spec.few_shot_fraction) {
      n_keep = static_cast<std::size_t>(std::llround(*spec.few_shot_fraction * n));
      n_keep = std::clamp<std::size_t>(n_keep, 1, n_train);
    }
    for (std::size_t r = 0; r < members.size(); ++r) {
      const std::size_t idx = members[order[r]];
      if (r < n_keep) {
        out.train.push_back(idx);
      } else if (r >= n_train) {
        out.test.push_back(idx);
      }
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

}  // namespace vfkt::downstream
