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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vfkt/data/dataset.h"
#include "vfkt/downstream/classifier.h"
#include "vfkt/downstream/report.h"
#include "vfkt/downstream/split.h"
#include "vfkt/frl/protocol.h"
#include "vfkt/lkt/checkpoint.h"
#include "vfkt/lkt/model.h"
#include "vfkt/lkt/transfer.h"
#include "vfkt/orchestrator/message_bus.h"

namespace vfkt::downstream {

struct PipelineConfig {
  // Mask, salt and schedule seeds here are the experiment-level values;
  // each data hospital gets seeds derived from them.
  frl::FrlOptions frl;
  lkt::LktConfig lkt;
  ClassifierKind classifier = ClassifierKind::kLogistic;
  ClassifierOptions training;
  SplitSpec split;  // seed is replaced per run
  std::vector<std::uint64_t> seeds{0};
  std::string config_hash;
  bool record_wall_clock = false;

  void Validate() const;
};

// Rows being augmented and their labels: the task party's non-overlapping
// rows restricted to its local columns.
data::FeatureMatrix NonOverlapFeatures(const data::Dataset& dataset);
data::LabelVector NonOverlapLabels(const data::Dataset& dataset);

// Step 1 with data hospital `index`: PSI and FRL over `bus`.
frl::FrlOutcome RunFederatedStep(const data::Dataset& dataset, std::size_t index,
                                 const PipelineConfig& config, orchestrator::MessageBus& bus);
// Step 1 with every data hospital, in order.
std::vector<frl::FrlOutcome> RunFederatedSteps(const data::Dataset& dataset,
                                               const PipelineConfig& config,
                                               orchestrator::MessageBus& bus);

// Step 3 alone: split, train and evaluate.
double TrainAndEvaluate(const data::FeatureMatrix& features, const data::LabelVector& labels,
                        const PipelineConfig& config, std::uint64_t seed);

// Everything one seed of one condition produced.
struct SeedRun {
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  std::vector<lkt::CheckpointPair> pairs;  // empty for the local condition
  lkt::FineTuneResult finetune;
};

// Steps 2 and 3 for one seed, given the Step 1 outcome of every data
// hospital. Runs entirely at the task party: there is no channel to send
// on. `local` ignores `federated`. Errors are rethrown with the seed
// prepended.
SeedRun RunSeed(const data::Dataset& dataset, Condition condition, const PipelineConfig& config,
                std::uint64_t seed, std::span<const frl::FrlOutcome> federated);

// Adds the last party of `dataset` to a finished seed run whose pairs cover
// the other parties: a new pair model trained against `added`, then
// fine-tuning of all encoders from their pre-trained state.
SeedRun ExtendSeedRun(const data::Dataset& dataset, std::span<const lkt::CheckpointPair> previous,
                      const frl::FrlOutcome& added, Condition condition,
                      const PipelineConfig& config, std::uint64_t seed);

// All configured seeds of one condition. Step 1 runs over `bus` (a private
// one when null) unless `federated` already holds its outcomes; `runs`
// receives the per-seed details when given.
RunReport RunCondition(const data::Dataset& dataset, Condition condition,
                       const PipelineConfig& config, orchestrator::MessageBus* bus = nullptr,
                       std::vector<SeedRun>* runs = nullptr,
                       std::span<const frl::FrlOutcome> federated = {});

enum class SweepAxis { kTaskFeatures, kDataFeatures, kOverlapCount, kNumDataHospitals };

std::string_view SweepAxisName(SweepAxis axis);
SweepAxis ParseSweepAxis(std::string_view name);

// The dataset restricted to one axis value; throws naming the axis.
data::Dataset ApplyAxis(const data::Dataset& dataset, SweepAxis axis, std::size_t value);

// One report per value per condition, value-major. Step 1 runs once per
// value and is shared by the conditions. Every report records the wall
// clock of its condition including Step 1.
std::vector<RunReport> Sweep(const data::Dataset& dataset, SweepAxis axis,
                             std::span<const std::size_t> values,
                             std::span<const Condition> conditions, const PipelineConfig& config);

}  // namespace vfkt::downstream
