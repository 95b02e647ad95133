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

#include "vfkt/data/dataset.h"

#include <algorithm>
#include <set>

#include "vfkt/error.h"

namespace vfkt::data {

void Dataset::Validate() const {
  std::vector<PartyState> all{task};
  all.insert(all.end(), data_parties.begin(), data_parties.end());
  ValidateParties(all);
  VFKT_ENFORCE(task.role == PartyRole::kTask, ErrorCode::kInvalidArgument,
               "dataset: '{}' must be the task party", task.party_id);
  std::set<std::string> names{task.party_id};
  for (const auto& p : data_parties) {
    VFKT_ENFORCE(names.insert(p.party_id).second, ErrorCode::kDuplicate,
                 "dataset: party name '{}' is used twice", p.party_id);
  }
  if (column_split.has_value()) {
    for (const auto* list : {&column_split->overlap_columns, &column_split->local_columns}) {
      VFKT_ENFORCE(!list->empty(), ErrorCode::kInvalidArgument,
                   "dataset: cross-domain column lists must not be empty");
      for (const auto& c : *list) task.local_features.ColumnOf(c);
    }
  }
}

std::vector<std::string> Dataset::OverlapColumns() const {
  return column_split ? column_split->overlap_columns : task.local_features.cols();
}

std::vector<std::string> Dataset::LocalColumns() const {
  return column_split ? column_split->local_columns : task.local_features.cols();
}

std::vector<std::size_t> NonOverlapRows(const Dataset& dataset) {
  std::set<SampleId> shared;
  for (const auto& p : dataset.data_parties) {
    for (const auto& id : p.local_features.rows()) {
      if (dataset.task.local_features.RowOf(id)) shared.insert(id);
    }
  }
  std::vector<std::size_t> out;
  const auto& rows = dataset.task.local_features.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!shared.contains(rows[i])) out.push_back(i);
  }
  return out;
}

namespace {

std::vector<std::string> FirstOf(const std::vector<std::string>& v, std::size_t n) {
  return {v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)};
}

PartyState KeepRows(const PartyState& p, const std::set<SampleId>& drop) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < p.local_features.num_rows(); ++i) {
    if (!drop.contains(p.local_features.rows()[i])) keep.push_back(i);
  }
  VFKT_ENFORCE(!keep.empty(), ErrorCode::kInvalidArgument,
               "overlap_count: party '{}' would be left without rows", p.party_id);
  PartyState out{p.party_id, p.role, p.local_features.SelectRows(keep), std::nullopt};
  if (p.labels) out.labels = p.labels->SelectRows(keep);
  return out;
}

}  // namespace

Dataset WithTaskFeatures(const Dataset& dataset, std::size_t count) {
  VFKT_ENFORCE(count >= 1, ErrorCode::kInvalidArgument, "task_features must be >= 1");
  Dataset out = dataset;
  if (!dataset.column_split) {
    const std::size_t available = dataset.task.local_features.num_cols();
    VFKT_ENFORCE(count <= available, ErrorCode::kInvalidArgument,
                 "task_features = {} exceeds the {} available task features", count, available);
    out.task.local_features = dataset.task.local_features.FirstColumns(count);
    return out;
  }
  // Cross-domain: both row sets keep their first `count` columns.
  const auto& split = *dataset.column_split;
  const std::size_t available = std::min(split.overlap_columns.size(), split.local_columns.size());
  VFKT_ENFORCE(count <= available, ErrorCode::kInvalidArgument,
               "task_features = {} exceeds the {} available task features", count, available);
  out.column_split = ColumnSplit{FirstOf(split.overlap_columns, count),
                                 FirstOf(split.local_columns, count)};
  std::vector<std::string> used;
  for (const auto& c : dataset.task.local_features.cols()) {
    const auto& s = *out.column_split;
    if (std::find(s.overlap_columns.begin(), s.overlap_columns.end(), c) !=
            s.overlap_columns.end() ||
        std::find(s.local_columns.begin(), s.local_columns.end(), c) != s.local_columns.end()) {
      used.push_back(c);
    }
  }
  out.task.local_features = dataset.task.local_features.SelectColumns(used);
  return out;
}

Dataset WithDataFeatures(const Dataset& dataset, std::size_t count) {
  VFKT_ENFORCE(count >= 1, ErrorCode::kInvalidArgument, "data_features must be >= 1");
  Dataset out = dataset;
  for (auto& p : out.data_parties) {
    const std::size_t available = p.local_features.num_cols();
    VFKT_ENFORCE(count <= available, ErrorCode::kInvalidArgument,
                 "data_features = {} exceeds the {} available features of '{}'", count,
                 available, p.party_id);
    p.local_features = p.local_features.FirstColumns(count);
  }
  return out;
}

namespace {

// Ids present at the task party and at every data hospital.
std::set<SampleId> CommonIds(const Dataset& dataset) {
  std::set<SampleId> common(dataset.task.local_features.rows().begin(),
                            dataset.task.local_features.rows().end());
  for (const auto& p : dataset.data_parties) {
    std::set<SampleId> next;
    for (const auto& id : p.local_features.rows()) {
      if (common.contains(id)) next.insert(id);
    }
    common = std::move(next);
  }
  return common;
}

Dataset DropIds(const Dataset& dataset, const std::set<SampleId>& drop) {
  Dataset out = dataset;
  out.task = KeepRows(dataset.task, drop);
  for (auto& p : out.data_parties) p = KeepRows(p, drop);
  return out;
}

}  // namespace

Dataset WithOverlapCount(const Dataset& dataset, std::size_t count) {
  VFKT_ENFORCE(count >= 1, ErrorCode::kInvalidArgument, "overlap_count must be >= 1");
  VFKT_ENFORCE(!dataset.data_parties.empty(), ErrorCode::kInvalidArgument,
               "overlap_count needs at least one data hospital");
  const std::set<SampleId> common = CommonIds(dataset);
  VFKT_ENFORCE(count <= common.size(), ErrorCode::kInvalidArgument,
               "overlap_count = {} exceeds the {} overlapping samples", count, common.size());
  std::set<SampleId> drop;
  std::size_t kept = 0;
  for (const auto& id : common) {
    if (kept++ >= count) drop.insert(id);
  }
  return DropIds(dataset, drop);
}

Dataset WithOverlapIds(const Dataset& dataset, const std::vector<SampleId>& ids) {
  VFKT_ENFORCE(!ids.empty(), ErrorCode::kInvalidArgument, "overlap_ids must not be empty");
  std::set<SampleId> drop = CommonIds(dataset);
  for (const auto& id : ids) {
    VFKT_ENFORCE(drop.erase(id) == 1, ErrorCode::kInvalidArgument,
                 "overlap_ids: '{}' is not shared by every party", id.value);
  }
  return DropIds(dataset, drop);
}

Dataset WithDataHospitals(const Dataset& dataset, std::size_t count) {
  VFKT_ENFORCE(count <= dataset.data_parties.size(), ErrorCode::kInvalidArgument,
               "num_data_hospitals = {} exceeds the {} available data hospitals", count,
               dataset.data_parties.size());
  Dataset out = dataset;
  out.data_parties.erase(out.data_parties.begin() + static_cast<std::ptrdiff_t>(count),
                         out.data_parties.end());
  return out;
}

Dataset StandardizeParties(const Dataset& dataset) {
  Dataset out = dataset;
  out.task.local_features = Standardize(dataset.task.local_features).matrix;
  for (auto& p : out.data_parties) p.local_features = Standardize(p.local_features).matrix;
  return out;
}

}  // namespace vfkt::data
