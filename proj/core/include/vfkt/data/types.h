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

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vfkt/numerics/matrix.h"

namespace vfkt::data {

using numerics::Matrix;

// Opaque per-sample identifier (patient id).
struct SampleId {
  std::string value;

  friend auto operator<=>(const SampleId&, const SampleId&) = default;
};

std::vector<SampleId> ToSampleIds(const std::vector<std::string>& raw);

// Sample-indexed feature table. Immutable after construction: at least one
// row and one column, unique row ids, finite values.
class FeatureMatrix {
 public:
  FeatureMatrix(std::vector<SampleId> rows, std::vector<std::string> cols, Matrix values);

  const std::vector<SampleId>& rows() const { return rows_; }
  const std::vector<std::string>& cols() const { return cols_; }
  const Matrix& values() const { return values_; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return cols_.size(); }

  std::optional<std::size_t> RowOf(const SampleId& id) const;
  std::size_t ColumnOf(const std::string& name) const;

  FeatureMatrix SelectRows(const std::vector<std::size_t>& indices) const;
  FeatureMatrix SelectColumns(const std::vector<std::string>& names) const;
  FeatureMatrix FirstColumns(std::size_t count) const;
  // Same ids and columns, new values.
  FeatureMatrix WithValues(Matrix values) const;

 private:
  std::vector<SampleId> rows_;
  std::vector<std::string> cols_;
  Matrix values_;
  std::unordered_map<std::string, std::size_t> row_index_;
};

// Integer class labels aligned with a FeatureMatrix's rows.
class LabelVector {
 public:
  LabelVector(std::vector<SampleId> rows, std::vector<int> labels, int num_classes);

  const std::vector<SampleId>& rows() const { return rows_; }
  const std::vector<int>& labels() const { return labels_; }
  int num_classes() const { return num_classes_; }
  std::size_t size() const { return labels_.size(); }

  LabelVector SelectRows(const std::vector<std::size_t>& indices) const;
  // Throws unless the row ids equal `features`' row ids in order.
  void CheckAlignedWith(const FeatureMatrix& features) const;

 private:
  std::vector<SampleId> rows_;
  std::vector<int> labels_;
  int num_classes_;
};

enum class PartyRole { kTask, kData };

struct PartyState {
  std::string party_id;
  PartyRole role = PartyRole::kData;
  FeatureMatrix local_features;
  std::optional<LabelVector> labels;

  // Data parties carry no labels; a task party's labels align with its rows.
  void Validate() const;
};

// Exactly one task party among `parties`.
void ValidateParties(const std::vector<PartyState>& parties);

// Intersection of two parties' id sets with row maps into each side.
struct OverlapIndex {
  std::vector<SampleId> overlapping_ids;  // lexicographic order
  std::vector<std::size_t> task_row_map;
  std::vector<std::size_t> data_row_map;

  std::size_t size() const { return overlapping_ids.size(); }
  bool empty() const { return overlapping_ids.empty(); }
};

}  // namespace vfkt::data
