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

#include <optional>
#include <string>
#include <vector>

#include "vfkt/data/types.h"

namespace vfkt::data {

// Column schemas for cross-domain mode: overlapping rows keep `overlap_columns`,
// non-overlapping rows keep `local_columns`. The two lists may overlap or be
// disjoint.
struct ColumnSplit {
  std::vector<std::string> overlap_columns;
  std::vector<std::string> local_columns;
};

struct TaskPartitions {
  FeatureMatrix overlap;        // task rows in overlap order
  FeatureMatrix non_overlap;    // remaining task rows, original order
  LabelVector non_overlap_labels;
};

// Splits the task party's table into its overlapping and non-overlapping
// parts. Throws when either part would be empty: knowledge transfer needs at
// least one shared sample and at least one local sample to enrich.
TaskPartitions SplitPartitions(const PartyState& task, const OverlapIndex& overlap,
                               const std::optional<ColumnSplit>& split = std::nullopt);

// Rows of a party's table in overlap order, for the given side's row map.
FeatureMatrix OverlapRows(const FeatureMatrix& features, const std::vector<std::size_t>& row_map);

struct ColumnStats {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<bool> constant;  // zero-variance columns, mapped to 0
};

struct StandardizeResult {
  FeatureMatrix matrix;
  ColumnStats stats;
};

// Per-column z-scores with the n-1 sample standard deviation. Needs >= 2 rows.
StandardizeResult Standardize(const FeatureMatrix& m);
// Applies previously fitted statistics (e.g. to samples arriving later).
FeatureMatrix ApplyStandardization(const FeatureMatrix& m, const ColumnStats& stats);

}  // namespace vfkt::data
