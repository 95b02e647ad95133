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

#include "vfkt/downstream/pipeline.h"

#include <algorithm>
#include <chrono>
#include <utility>

#include "vfkt/error.h"
#include "vfkt/numerics/random.h"

namespace vfkt::downstream {

using numerics::DeriveSeed;

void PipelineConfig::Validate() const {
  lkt.Validate();
  split.Validate();
  VFKT_ENFORCE(!seeds.empty(), ErrorCode::kInvalidArgument, "at least one seed is required");
  VFKT_ENFORCE(training.epochs >= 1 && training.batch_size >= 1 && training.learning_rate > 0,
               ErrorCode::kInvalidArgument, "invalid classifier training options");
}

data::FeatureMatrix NonOverlapFeatures(const data::Dataset& dataset) {
  const auto rows = data::NonOverlapRows(dataset);
  VFKT_ENFORCE(rows.size() >= 2, ErrorCode::kInvalidArgument,
               "the task party has {} non-overlapping rows; at least 2 are needed", rows.size());
  return dataset.task.local_features.SelectRows(rows).SelectColumns(dataset.LocalColumns());
}

data::LabelVector NonOverlapLabels(const data::Dataset& dataset) {
  VFKT_ENFORCE(dataset.task.labels.has_value(), ErrorCode::kInvalidArgument,
               "the task party has no labels");
  return dataset.task.labels->SelectRows(data::NonOverlapRows(dataset));
}

frl::FrlOutcome RunFederatedStep(const data::Dataset& dataset, std::size_t index,
                                 const PipelineConfig& config, orchestrator::MessageBus& bus) {
  VFKT_ENFORCE(index < dataset.data_parties.size(), ErrorCode::kInvalidArgument,
               "no data hospital with index {}", index);
  const data::PartyState& party = dataset.data_parties[index];
  const data::FeatureMatrix task_shared =
      dataset.task.local_features.SelectColumns(dataset.OverlapColumns());
  frl::FrlOptions options = config.frl;
  options.fedsvd.seed = DeriveSeed(config.frl.fedsvd.seed, "fedsvd", index);
  options.vfedpca.seed = DeriveSeed(config.frl.vfedpca.seed, "vfedpca", index);
  options.psi_salt = DeriveSeed(config.frl.psi_salt, "psi", index);
  options.schedule_seed = DeriveSeed(config.frl.schedule_seed, "schedule", index);
  try {
    return frl::RunFederatedRepresentation(bus, {dataset.task.party_id, &task_shared},
                                           {party.party_id, &party.local_features}, options);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("federated step with '{}': {}", party.party_id, e.what()));
  }
}

std::vector<frl::FrlOutcome> RunFederatedSteps(const data::Dataset& dataset,
                                               const PipelineConfig& config,
                                               orchestrator::MessageBus& bus) {
  std::vector<frl::FrlOutcome> out;
  for (std::size_t k = 0; k < dataset.data_parties.size(); ++k) {
    out.push_back(RunFederatedStep(dataset, k, config, bus));
  }
  return out;
}

double TrainAndEvaluate(const data::FeatureMatrix& features, const data::LabelVector& labels,
                        const PipelineConfig& config, std::uint64_t seed) {
  SplitSpec spec = config.split;
  spec.seed = DeriveSeed(seed, "split");
  const SplitIndices parts = StratifiedSplit(labels.labels(), spec);
  VFKT_ENFORCE(!parts.test.empty(), ErrorCode::kInvalidArgument, "the test split is empty");
  const Matrix& x = features.values();
  std::vector<int> y_train, y_test;
  for (auto i : parts.train) y_train.push_back(labels.labels()[i]);
  for (auto i : parts.test) y_test.push_back(labels.labels()[i]);
  const Classifier c =
      TrainClassifier(numerics::SelectRows(x, parts.train), y_train, labels.num_classes(),
                      config.classifier, DeriveSeed(seed, "classifier"), config.training);
  return Evaluate(c, numerics::SelectRows(x, parts.test), y_test);
}

namespace {

// Step 2 for data hospital `index`.
lkt::CheckpointPair TrainPair(const data::Dataset& dataset, std::size_t index,
                              const frl::FrlOutcome& federated,
                              const data::FeatureMatrix& non_overlap, const lkt::LktConfig& lkt,
                              std::uint64_t seed) {
  const data::PartyState& party = dataset.data_parties[index];
  Matrix overlap;
  if (lkt.reconstruction == lkt::ReconstructionSource::kOverlap) {
    overlap = dataset.task.local_features.SelectRows(federated.overlap.task_row_map)
                  .SelectColumns(dataset.LocalColumns())
                  .values();
  }
  const Matrix& h_fed = federated.representation.matrix;
  lkt::TrainedPair trained = lkt::TrainLkt(non_overlap, overlap, h_fed, lkt,
                                           DeriveSeed(seed, "lkt", index), party.party_id);
  return {party.party_id, h_fed, trained.model, trained.model};
}

lkt::LktConfig LktFor(const data::Dataset& dataset, Condition condition,
                      const PipelineConfig& config) {
  lkt::LktConfig lkt = config.lkt;
  if (condition == Condition::kNoMi) lkt.mi_weight = 0.0;
  // Overlapping rows carry other columns in cross-domain mode.
  if (dataset.cross_domain()) lkt.reconstruction = lkt::ReconstructionSource::kNonOverlap;
  return lkt;
}

// Fine-tuning (unless ablated), augmentation and Step 3.
void Finish(SeedRun& run, const data::FeatureMatrix& non_overlap,
            const data::LabelVector& labels, const lkt::LktConfig& lkt, Condition condition,
            const PipelineConfig& config) {
  std::vector<lkt::LktModel> models;
  std::vector<Matrix> h_feds;
  for (const auto& pair : run.pairs) {
    models.push_back(pair.pretrained);
    h_feds.push_back(pair.h_fed);
  }
  if (condition != Condition::kNoCl && models.size() >= 2) {
    run.finetune = lkt::FineTuneContrastive(models, non_overlap, h_feds, lkt,
                                            DeriveSeed(run.seed, "finetune"));
  } else {
    const double r = lkt::RedundancyStatistic(models, non_overlap.values());
    run.finetune.redundancy_before = r;
    run.finetune.redundancy_after = r;
  }
  for (std::size_t k = 0; k < models.size(); ++k) run.pairs[k].finetuned = models[k];
  const data::FeatureMatrix features =
      models.empty() ? non_overlap : lkt::Augment(models, non_overlap).features;
  run.accuracy = TrainAndEvaluate(features, labels, config, run.seed);
}

template <typename Body>
SeedRun WithSeedContext(std::uint64_t seed, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("seed {}: {}", seed, e.what()));
  }
}

}  // namespace

SeedRun RunSeed(const data::Dataset& dataset, Condition condition, const PipelineConfig& config,
                std::uint64_t seed, std::span<const frl::FrlOutcome> federated) {
  return WithSeedContext(seed, [&] {
    const data::FeatureMatrix non_overlap = NonOverlapFeatures(dataset);
    const data::LabelVector labels = NonOverlapLabels(dataset);
    const lkt::LktConfig lkt = LktFor(dataset, condition, config);
    SeedRun run;
    run.seed = seed;
    if (condition != Condition::kLocal) {
      VFKT_ENFORCE(!dataset.data_parties.empty(), ErrorCode::kInvalidArgument,
                   "condition '{}' needs at least one data hospital", ConditionName(condition));
      VFKT_ENFORCE(federated.size() == dataset.data_parties.size(), ErrorCode::kInvalidArgument,
                   "{} federated representations for {} data hospitals", federated.size(),
                   dataset.data_parties.size());
      for (std::size_t k = 0; k < dataset.data_parties.size(); ++k) {
        run.pairs.push_back(TrainPair(dataset, k, federated[k], non_overlap, lkt, seed));
      }
    }
    Finish(run, non_overlap, labels, lkt, condition, config);
    return run;
  });
}

SeedRun ExtendSeedRun(const data::Dataset& dataset, std::span<const lkt::CheckpointPair> previous,
                      const frl::FrlOutcome& added, Condition condition,
                      const PipelineConfig& config, std::uint64_t seed) {
  return WithSeedContext(seed, [&] {
    VFKT_ENFORCE(condition != Condition::kLocal, ErrorCode::kInvalidArgument,
                 "the local condition has no data hospitals to extend");
    VFKT_ENFORCE(previous.size() + 1 == dataset.data_parties.size(), ErrorCode::kInvalidArgument,
                 "expected {} prior pairs for {} data hospitals, got {}",
                 dataset.data_parties.size() - 1, dataset.data_parties.size(), previous.size());
    const data::FeatureMatrix non_overlap = NonOverlapFeatures(dataset);
    for (std::size_t k = 0; k < previous.size(); ++k) {
      VFKT_ENFORCE(previous[k].hospital == dataset.data_parties[k].party_id,
                   ErrorCode::kSchemaMismatch, "prior pair {} is '{}' but party {} is '{}'", k,
                   previous[k].hospital, k, dataset.data_parties[k].party_id);
      VFKT_ENFORCE(previous[k].pretrained.input_columns == non_overlap.cols(),
                   ErrorCode::kSchemaMismatch,
                   "prior pair '{}' was trained on different task columns", previous[k].hospital);
    }
    const data::LabelVector labels = NonOverlapLabels(dataset);
    const lkt::LktConfig lkt = LktFor(dataset, condition, config);
    SeedRun run;
    run.seed = seed;
    run.pairs.assign(previous.begin(), previous.end());
    run.pairs.push_back(TrainPair(dataset, previous.size(), added, non_overlap, lkt, seed));
    Finish(run, non_overlap, labels, lkt, condition, config);
    return run;
  });
}

RunReport RunCondition(const data::Dataset& dataset, Condition condition,
                       const PipelineConfig& config, orchestrator::MessageBus* bus,
                       std::vector<SeedRun>* runs, std::span<const frl::FrlOutcome> federated) {
  config.Validate();
  dataset.Validate();
  RunReport report;
  report.condition = std::string(ConditionName(condition));
  report.config_hash = config.config_hash;
  const auto start = std::chrono::steady_clock::now();
  std::vector<frl::FrlOutcome> own;
  if (condition != Condition::kLocal && federated.empty()) {
    orchestrator::MessageBus private_bus;
    own = RunFederatedSteps(dataset, config, bus != nullptr ? *bus : private_bus);
    federated = own;
  }
  for (std::uint64_t seed : config.seeds) {
    SeedRun run = RunSeed(dataset, condition, config, seed, federated);
    report.seeds.push_back(seed);
    report.accuracies.push_back(run.accuracy);
    if (runs != nullptr) runs->push_back(std::move(run));
  }
  if (config.record_wall_clock) {
    report.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  report.Summarize();
  return report;
}

std::string_view SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kTaskFeatures:
      return "task_features";
    case SweepAxis::kDataFeatures:
      return "data_features";
    case SweepAxis::kOverlapCount:
      return "overlap_count";
    case SweepAxis::kNumDataHospitals:
      return "num_data_hospitals";
  }
  return "unknown";
}

SweepAxis ParseSweepAxis(std::string_view name) {
  for (SweepAxis a : {SweepAxis::kTaskFeatures, SweepAxis::kDataFeatures,
                      SweepAxis::kOverlapCount, SweepAxis::kNumDataHospitals}) {
    if (SweepAxisName(a) == name) return a;
  }
  Throw(ErrorCode::kInvalidArgument,
        "unknown sweep axis '{}' (expected task_features, data_features, overlap_count or "
        "num_data_hospitals)",
        name);
}

data::Dataset ApplyAxis(const data::Dataset& dataset, SweepAxis axis, std::size_t value) {
  switch (axis) {
    case SweepAxis::kTaskFeatures:
      return data::WithTaskFeatures(dataset, value);
    case SweepAxis::kDataFeatures:
      return data::WithDataFeatures(dataset, value);
    case SweepAxis::kOverlapCount:
      return data::WithOverlapCount(dataset, value);
    case SweepAxis::kNumDataHospitals:
      return data::WithDataHospitals(dataset, value);
  }
  return dataset;
}

std::vector<RunReport> Sweep(const data::Dataset& dataset, SweepAxis axis,
                             std::span<const std::size_t> values,
                             std::span<const Condition> conditions, const PipelineConfig& config) {
  VFKT_ENFORCE(!values.empty(), ErrorCode::kInvalidArgument, "sweep over {} has no values",
               SweepAxisName(axis));
  // Reject bad values before any work is done.
  std::vector<data::Dataset> variants;
  for (std::size_t v : values) variants.push_back(ApplyAxis(dataset, axis, v));
  PipelineConfig timed = config;
  timed.record_wall_clock = true;
  std::vector<RunReport> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::vector<frl::FrlOutcome> federated;
    double step_one_s = 0.0;
    const bool needs_frl = std::any_of(conditions.begin(), conditions.end(),
                                       [](Condition c) { return c != Condition::kLocal; });
    if (needs_frl) {
      orchestrator::MessageBus bus;
      const auto start = std::chrono::steady_clock::now();
      federated = RunFederatedSteps(variants[i], config, bus);
      step_one_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    for (Condition c : conditions) {
      RunReport r = RunCondition(variants[i], c, timed, nullptr, nullptr, federated);
      if (c != Condition::kLocal) *r.wall_clock_s += step_one_s;
      r.axis = std::string(SweepAxisName(axis));
      r.value = static_cast<double>(values[i]);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace vfkt::downstream
