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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfkt/data/preprocess.h"
#include "vfkt/downstream/pipeline.h"
#include "vfkt/downstream/report.h"
#include "vfkt/orchestrator/synthetic.h"

namespace vfkt::orchestrator {

enum class DataSource { kSynthetic, kCsv };

struct CsvSource {
  std::filesystem::path task_path;
  std::string task_id_column = "id";
  std::string task_label_column = "label";
  std::vector<std::filesystem::path> data_paths;
  std::string data_id_column = "id";
  // Party names; defaults to the file stems.
  std::vector<std::string> data_names;
};

struct SweepSpec {
  downstream::SweepAxis axis = downstream::SweepAxis::kOverlapCount;
  std::vector<std::size_t> values;
};

// A parsed experiment file. See docs in README for the grammar; every key
// has a default except the CSV paths.
struct ExperimentConfig {
  std::string name = "experiment";
  std::uint64_t seed = 0;
  std::size_t repeats = 10;  // run seeds are seed, seed + 1, ...
  std::vector<downstream::Condition> conditions{downstream::Condition::kLocal,
                                                downstream::Condition::kUniTrans};

  DataSource source = DataSource::kSynthetic;
  SyntheticSpec synthetic;
  // Unset derives the generator seed from `seed`.
  std::optional<std::uint64_t> synthetic_seed;
  CsvSource csv;
  std::optional<data::ColumnSplit> column_split;  // cross-domain mode
  bool standardize = true;
  std::optional<std::size_t> overlap_count;
  std::vector<std::string> overlap_ids;  // empty keeps every shared id

  frl::FrlOptions frl;
  lkt::LktConfig lkt;
  downstream::ClassifierKind classifier = downstream::ClassifierKind::kLogistic;
  downstream::ClassifierOptions training;
  downstream::SplitSpec split;

  std::optional<SweepSpec> sweep;

  std::vector<std::uint64_t> RunSeeds() const;
  // Pipeline settings with the run seeds and the config hash filled in.
  downstream::PipelineConfig Pipeline() const;
  // Generator spec with its effective seed.
  SyntheticSpec EffectiveSynthetic() const;
};

// Parses the text of an experiment file. `origin` names the file in error
// messages and relative CSV paths resolve against `base_dir`. Throws
// Error(kParse) as "<origin>:<line>: <message>" for malformed lines, unknown
// sections or keys, duplicates and invalid values.
ExperimentConfig ParseConfig(std::string_view text, std::string_view origin = "<config>",
                             const std::filesystem::path& base_dir = {});

// Throws Error(kNotFound) naming the path when it cannot be opened.
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Canonical text: every effective setting, sections and keys in a fixed
// order, paths absolute. ParseConfig(ToCanonicalText(c)) reproduces c.
std::string ToCanonicalText(const ExperimentConfig& config);

// FNV-1a over the canonical text without non-semantic keys (the name).
std::string ConfigHash(const ExperimentConfig& config);

}  // namespace vfkt::orchestrator
