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

#include "vfkt/data/dataset.h"
#include "vfkt/downstream/pipeline.h"
#include "vfkt/downstream/report.h"
#include "vfkt/orchestrator/config.h"

namespace vfkt::orchestrator {

// Environment variable naming the directory that run outputs go under when
// no explicit output directory is given.
inline constexpr const char* kOutputRootEnv = "VFKT_OUTPUT_ROOT";

// `explicit_dir` when set, else $VFKT_OUTPUT_ROOT/<name>, else runs/<name>.
std::filesystem::path ResolveOutputDir(const std::optional<std::filesystem::path>& explicit_dir,
                                       const std::string& name);

// Builds the parties described by the config: synthetic generation or CSV
// loading, then overlap restriction and per-party standardization.
data::Dataset LoadDataset(const ExperimentConfig& config);

// A data hospital read from a CSV file (no labels).
data::PartyState LoadDataParty(const std::filesystem::path& path, const std::string& id_column,
                               const std::string& name);

struct ExperimentResult {
  std::vector<downstream::RunReport> reports;
  std::vector<orchestrator::TraceEntry> trace;
};

// Full run: Step 1 once per data hospital over one bus, then every
// condition and seed. Writes into `out_dir`:
//   config.ini                              canonical config
//   reports/<condition>.json                one RunReport per condition
//   checkpoints/<condition>/seed-<s>.json   LKT checkpoint per seed
//   trace.jsonl                             message trace
// Failures are rethrown with the stage (and seed) prepended.
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const std::filesystem::path& out_dir);

// One sub-directory "<axis>-<value>" per value, each holding reports/ and
// trace.jsonl.
ExperimentResult RunSweep(const ExperimentConfig& config, downstream::SweepAxis axis,
                          const std::vector<std::size_t>& values,
                          const std::filesystem::path& out_dir);

struct ExtensionResult {
  std::vector<downstream::RunReport> reports;
  std::vector<orchestrator::TraceEntry> trace;
  std::vector<downstream::SeedRun> runs;
};

// Adds a data hospital to the run stored in `run_dir`: one new PSI + FRL
// execution, one new pair model per seed, contrastive fine-tuning over all
// encoders from their stored pre-trained state, and fresh Step 3 results
// for every non-local condition. Writes config.ini, reports/, checkpoints/
// and trace.jsonl into `out_dir`.
//
// Throws Error(kSchemaMismatch) when the stored checkpoints do not match
// the run's config or task schema, Error(kDuplicate) on a name clash.
ExtensionResult AddDataHospital(const std::filesystem::path& run_dir, data::PartyState party,
                                const std::filesystem::path& out_dir);

}  // namespace vfkt::orchestrator
