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

#include "vfkt/data/types.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "vfkt/error.h"

namespace vfkt::data {

std::vector<SampleId> ToSampleIds(const std::vector<std::string>& raw) {
  std::vector<SampleId> out;
  out.reserve(raw.size());
  for (const auto& s : raw) out.push_back(SampleId{s});
  return out;
}

FeatureMatrix::FeatureMatrix(std::vector<SampleId> rows, std::vector<std::string> cols,
                             Matrix values)
    : rows_(std::move(rows)), cols_(std::move(cols)), values_(std::move(values)) {
  VFKT_ENFORCE(!rows_.empty(), ErrorCode::kInvalidArgument, "feature matrix needs >= 1 row");
  VFKT_ENFORCE(!cols_.empty(), ErrorCode::kInvalidArgument, "feature matrix needs >= 1 column");
  VFKT_ENFORCE(values_.rows() == rows_.size() && values_.cols() == cols_.size(),
               ErrorCode::kDimensionMismatch, "feature matrix values {}x{} for {} ids x {} columns",
               values_.rows(), values_.cols(), rows_.size(), cols_.size());
  for (std::size_t i = 0; i < values_.rows(); ++i) {
    for (std::size_t j = 0; j < values_.cols(); ++j) {
      VFKT_ENFORCE(std::isfinite(values_(i, j)), ErrorCode::kInvalidArgument,
                   "non-finite value at sample '{}', column '{}'", rows_[i].value, cols_[j]);
    }
  }
  row_index_.reserve(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const bool inserted = row_index_.emplace(rows_[i].value, i).second;
    VFKT_ENFORCE(inserted, ErrorCode::kDuplicate, "duplicate sample id '{}'", rows_[i].value);
  }
}

std::optional<std::size_t> FeatureMatrix::RowOf(const SampleId& id) const {
  const auto it = row_index_.find(id.value);
  if (it == row_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FeatureMatrix::ColumnOf(const std::string& name) const {
  const auto it = std::find(cols_.begin(), cols_.end(), name);
  VFKT_ENFORCE(it != cols_.end(), ErrorCode::kNotFound, "unknown column '{}'", name);
  return static_cast<std::size_t>(it - cols_.begin());
}

FeatureMatrix FeatureMatrix::SelectRows(const std::vector<std::size_t>& indices) const {
  std::vector<SampleId> ids;
  ids.reserve(indices.size());
  for (std::size_t i : indices) {
    VFKT_ENFORCE(i < rows_.size(), ErrorCode::kDimensionMismatch, "row {} out of range", i);
    ids.push_back(rows_[i]);
  }
  return FeatureMatrix(std::move(ids), cols_, numerics::SelectRows(values_, indices));
}

FeatureMatrix FeatureMatrix::SelectColumns(const std::vector<std::string>& names) const {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& n : names) idx.push_back(ColumnOf(n));
  return FeatureMatrix(rows_, names, numerics::SelectCols(values_, idx));
}

FeatureMatrix FeatureMatrix::FirstColumns(std::size_t count) const {
  VFKT_ENFORCE(count >= 1 && count <= cols_.size(), ErrorCode::kInvalidArgument,
               "requested {} columns of {}", count, cols_.size());
  return FeatureMatrix(rows_, std::vector<std::string>(cols_.begin(), cols_.begin() + count),
                       numerics::SliceCols(values_, 0, count));
}

FeatureMatrix FeatureMatrix::WithValues(Matrix values) const {
  return FeatureMatrix(rows_, cols_, std::move(values));
}

LabelVector::LabelVector(std::vector<SampleId> rows, std::vector<int> labels, int num_classes)
    : rows_(std::move(rows)), labels_(std::move(labels)), num_classes_(num_classes) {
  VFKT_ENFORCE(num_classes_ >= 1, ErrorCode::kInvalidArgument, "num_classes must be positive");
  VFKT_ENFORCE(rows_.size() == labels_.size(), ErrorCode::kDimensionMismatch,
               "{} label ids for {} labels", rows_.size(), labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    VFKT_ENFORCE(labels_[i] >= 0 && labels_[i] < num_classes_, ErrorCode::kInvalidArgument,
                 "label {} of sample '{}' outside [0, {})", labels_[i], rows_[i].value,
                 num_classes_);
  }
}

LabelVector LabelVector::SelectRows(const std::vector<std::size_t>& indices) const {
  std::vector<SampleId> ids;
  std::vector<int> labels;
  for (std::size_t i : indices) {
    VFKT_ENFORCE(i < rows_.size(), ErrorCode::kDimensionMismatch, "row {} out of range", i);
    ids.push_back(rows_[i]);
    labels.push_back(labels_[i]);
  }
  return LabelVector(std::move(ids), std::move(labels), num_classes_);
}

void LabelVector::CheckAlignedWith(const FeatureMatrix& features) const {
  VFKT_ENFORCE(rows_ == features.rows(), ErrorCode::kSchemaMismatch,
               "labels ({} rows) are not aligned with features ({} rows)", rows_.size(),
               features.num_rows());
}

void PartyState::Validate() const {
  if (role == PartyRole::kData) {
    VFKT_ENFORCE(!labels.has_value(), ErrorCode::kInvalidArgument,
                 "data party '{}' must not carry labels", party_id);
    return;
  }
  VFKT_ENFORCE(labels.has_value(), ErrorCode::kInvalidArgument,
               "task party '{}' has no labels", party_id);
  labels->CheckAlignedWith(local_features);
}

void ValidateParties(const std::vector<PartyState>& parties) {
  std::size_t tasks = 0;
  for (const auto& p : parties) {
    p.Validate();
    if (p.role == PartyRole::kTask) ++tasks;
  }
  VFKT_ENFORCE(tasks == 1, ErrorCode::kInvalidArgument,
               "expected exactly one task party, found {}", tasks);
}

}  // namespace vfkt::data
