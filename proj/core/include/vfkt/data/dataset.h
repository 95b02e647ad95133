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
#include <optional>
#include <string>
#include <vector>

#include "vfkt/data/preprocess.h"
#include "vfkt/data/types.h"

namespace vfkt::data {

// A complete multi-party experiment input: one labelled task party and any
// number of data hospitals. In cross-domain mode `column_split` says which
// task columns the overlapping and the non-overlapping rows carry.
struct Dataset {
  PartyState task;
  std::vector<PartyState> data_parties;
  std::optional<ColumnSplit> column_split;

  // Throws unless roles, labels and party names are consistent.
  void Validate() const;
  bool cross_domain() const { return column_split.has_value(); }
  // Task columns shared with the data hospitals during FRL.
  std::vector<std::string> OverlapColumns() const;
  // Task columns of the rows being augmented.
  std::vector<std::string> LocalColumns() const;
};

// Task rows (indices into task.local_features) that appear in no data
// hospital's table, in original order. Computed by the experiment harness to
// define the evaluation rows; no party learns anything from it.
std::vector<std::size_t> NonOverlapRows(const Dataset& dataset);

// Copies restricted along one experiment axis. Each throws
// Error(kInvalidArgument) naming the axis when the value exceeds what the
// dataset provides.
Dataset WithTaskFeatures(const Dataset& dataset, std::size_t count);
Dataset WithDataFeatures(const Dataset& dataset, std::size_t count);
// Keeps the first `count` ids (lexicographic) shared by the task party and
// every data hospital; the other shared ids are dropped from all parties.
Dataset WithOverlapCount(const Dataset& dataset, std::size_t count);
// Keeps exactly the listed shared ids; throws if one is not shared.
Dataset WithOverlapIds(const Dataset& dataset, const std::vector<SampleId>& ids);
Dataset WithDataHospitals(const Dataset& dataset, std::size_t count);

// Per-party z-scoring with each party's own statistics (a local step).
Dataset StandardizeParties(const Dataset& dataset);

}  // namespace vfkt::data
