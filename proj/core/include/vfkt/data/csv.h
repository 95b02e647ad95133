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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vfkt/data/types.h"

namespace vfkt::data {

struct CsvTable {
  FeatureMatrix features;
  std::optional<LabelVector> labels;
  // Original label value of each dense class index.
  std::vector<std::string> class_names;
};

// Reads a comma-separated file with a header row. Every column other than
// the id and label columns must hold real numbers. Labels are re-encoded
// densely: numerically sorted when every label parses as a number,
// lexicographically otherwise.
CsvTable LoadCsv(const std::filesystem::path& path, const std::string& id_column,
                 const std::optional<std::string>& label_column = std::nullopt);

// Writes `features` (and labels, when given) so that LoadCsv reads back the
// identical values.
void WriteCsv(const std::filesystem::path& path, const FeatureMatrix& features,
              const LabelVector* labels = nullptr, const std::string& id_column = "id",
              const std::string& label_column = "label");

// Splits one CSV record; supports double-quoted fields with "" escapes.
std::vector<std::string> SplitCsvLine(const std::string& line);

}  // namespace vfkt::data
