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

#include "vfkt/data/preprocess.h"

#include <cmath>
#include <unordered_set>

#include "vfkt/error.h"

namespace vfkt::data {

TaskPartitions SplitPartitions(const PartyState& task, const OverlapIndex& overlap,
                               const std::optional<ColumnSplit>& split) {
  VFKT_ENFORCE(task.role == PartyRole::kTask && task.labels.has_value(),
               ErrorCode::kInvalidArgument, "split_partitions: '{}' is not a labelled task party",
               task.party_id);
  const FeatureMatrix& all = task.local_features;
  VFKT_ENFORCE(overlap.task_row_map.size() == overlap.overlapping_ids.size(),
               ErrorCode::kInvalidArgument, "split_partitions: malformed overlap index");
  std::unordered_set<std::size_t> in_overlap;
  for (std::size_t k = 0; k < overlap.size(); ++k) {
    const auto row = all.RowOf(overlap.overlapping_ids[k]);
    VFKT_ENFORCE(row.has_value(), ErrorCode::kNotFound,
                 "split_partitions: overlap references unknown sample '{}'",
                 overlap.overlapping_ids[k].value);
    VFKT_ENFORCE(*row == overlap.task_row_map[k], ErrorCode::kInvalidArgument,
                 "split_partitions: overlap was not built from party '{}'", task.party_id);
    in_overlap.insert(*row);
  }
  VFKT_ENFORCE(!overlap.empty(), ErrorCode::kInvalidArgument,
               "split_partitions: no overlapping samples; knowledge transfer requires a "
               "non-empty overlap between the task party and each data party");
  std::vector<std::size_t> local_rows;
  for (std::size_t i = 0; i < all.num_rows(); ++i) {
    if (!in_overlap.contains(i)) local_rows.push_back(i);
  }
  VFKT_ENFORCE(!local_rows.empty(), ErrorCode::kInvalidArgument,
               "split_partitions: every task sample overlaps; nothing local to enrich");

  FeatureMatrix ol = all.SelectRows(overlap.task_row_map);
  FeatureMatrix nl = all.SelectRows(local_rows);
  if (split.has_value()) {
    ol = ol.SelectColumns(split->overlap_columns);
    nl = nl.SelectColumns(split->local_columns);
  }
  LabelVector y_nl = task.labels->SelectRows(local_rows);
  return TaskPartitions{std::move(ol), std::move(nl), std::move(y_nl)};
}

FeatureMatrix OverlapRows(const FeatureMatrix& features, const std::vector<std::size_t>& row_map) {
  return features.SelectRows(row_map);
}

StandardizeResult Standardize(const FeatureMatrix& m) {
  const std::size_t n = m.num_rows();
  const std::size_t p = m.num_cols();
  VFKT_ENFORCE(n >= 2, ErrorCode::kInvalidArgument, "standardize: needs >= 2 rows, got {}", n);
  ColumnStats stats;
  stats.mean.assign(p, 0.0);
  stats.stddev.assign(p, 0.0);
  stats.constant.assign(p, false);
  const Matrix& v = m.values();
  for (std::size_t j = 0; j < p; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += v(i, j);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (v(i, j) - mean) * (v(i, j) - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    stats.mean[j] = mean;
    stats.stddev[j] = sd;
    // Relative cut so that float noise around a constant value counts as constant.
    stats.constant[j] = sd <= 1e-12 * std::max(1.0, std::abs(mean));
  }
  return StandardizeResult{ApplyStandardization(m, stats), std::move(stats)};
}

FeatureMatrix ApplyStandardization(const FeatureMatrix& m, const ColumnStats& stats) {
  VFKT_ENFORCE(stats.mean.size() == m.num_cols(), ErrorCode::kSchemaMismatch,
               "standardize: stats for {} columns applied to {}", stats.mean.size(), m.num_cols());
  Matrix out = m.values();
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) {
      out(i, j) = stats.constant[j] ? 0.0 : (out(i, j) - stats.mean[j]) / stats.stddev[j];
    }
  }
  return m.WithValues(std::move(out));
}

}  // namespace vfkt::data
