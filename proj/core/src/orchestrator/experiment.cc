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

#include "vfkt/orchestrator/experiment.h"

#include <cstdlib>
#include <fstream>

#include "vfkt/data/csv.h"
#include "vfkt/error.h"
#include "vfkt/lkt/checkpoint.h"
#include "vfkt/numerics/random.h"
#include "vfkt/orchestrator/message_bus.h"

namespace vfkt::orchestrator {

namespace fs = std::filesystem;
using downstream::Condition;

std::filesystem::path ResolveOutputDir(const std::optional<fs::path>& explicit_dir,
                                       const std::string& name) {
  if (explicit_dir) return *explicit_dir;
  if (const char* root = std::getenv(kOutputRootEnv); root != nullptr && *root != '\0') {
    return fs::path(root) / name;
  }
  return fs::path("runs") / name;
}

data::PartyState LoadDataParty(const fs::path& path, const std::string& id_column,
                               const std::string& name) {
  data::CsvTable table = data::LoadCsv(path, id_column);
  return {name, data::PartyRole::kData, std::move(table.features), std::nullopt};
}

data::Dataset LoadDataset(const ExperimentConfig& config) {
  try {
    data::Dataset ds = [&] {
      if (config.source == DataSource::kSynthetic) {
        return GenerateSynthetic(config.EffectiveSynthetic()).dataset;
      }
      const CsvSource& csv = config.csv;
      data::CsvTable task = data::LoadCsv(csv.task_path, csv.task_id_column, csv.task_label_column);
      data::Dataset out{{"task", data::PartyRole::kTask, std::move(task.features),
                         std::move(task.labels)},
                        {},
                        std::nullopt};
      for (std::size_t k = 0; k < csv.data_paths.size(); ++k) {
        out.data_parties.push_back(
            LoadDataParty(csv.data_paths[k], csv.data_id_column, csv.data_names[k]));
      }
      return out;
    }();
    ds.column_split = config.column_split;
    ds.Validate();
    if (config.overlap_count) ds = data::WithOverlapCount(ds, *config.overlap_count);
    if (!config.overlap_ids.empty()) {
      ds = data::WithOverlapIds(ds, data::ToSampleIds(config.overlap_ids));
    }
    if (config.standardize) ds = data::StandardizeParties(ds);
    return ds;
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("loading data: {}", e.what()));
  }
}

namespace {

downstream::PipelineConfig PipelineFor(const ExperimentConfig& config) {
  downstream::PipelineConfig p = config.Pipeline();
  p.frl.fedsvd.seed = numerics::DeriveSeed(config.seed, "fedsvd");
  p.frl.vfedpca.seed = numerics::DeriveSeed(config.seed, "vfedpca");
  p.frl.psi_salt = numerics::DeriveSeed(config.seed, "psi");
  p.frl.schedule_seed = numerics::DeriveSeed(config.seed, "schedule");
  return p;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  VFKT_ENFORCE(out.good(), ErrorCode::kIo, "cannot write '{}'", path.string());
  out << text;
}

fs::path CheckpointPath(const fs::path& dir, Condition condition, std::uint64_t seed) {
  return dir / "checkpoints" / std::string(downstream::ConditionName(condition)) /
         fmt::format("seed-{}.json", seed);
}

void WriteCheckpoint(const fs::path& dir, Condition condition, const ExperimentConfig& config,
                     const lkt::LktConfig& lkt, const downstream::SeedRun& run,
                     const std::vector<std::string>& columns) {
  lkt::LktCheckpoint ck;
  ck.config_hash = ConfigHash(config);
  ck.recon_weight = lkt.recon_weight;
  ck.mi_weight = condition == Condition::kNoMi ? 0.0 : lkt.mi_weight;
  ck.tau = lkt.tau;
  ck.input_columns = columns;
  ck.pairs = run.pairs;
  const fs::path path = CheckpointPath(dir, condition, run.seed);
  fs::create_directories(path.parent_path());
  lkt::SaveCheckpoint(path, ck);
}

void WriteReports(const fs::path& dir, const std::vector<downstream::RunReport>& reports) {
  fs::create_directories(dir / "reports");
  for (const auto& r : reports) {
    downstream::WriteReport((dir / "reports" / (r.condition + ".json")).string(), r);
  }
}

// Runs every condition over shared Step 1 outcomes.
std::vector<downstream::RunReport> RunConditions(
    const ExperimentConfig& config, const data::Dataset& dataset,
    const downstream::PipelineConfig& pipeline, MessageBus& bus, const fs::path* checkpoint_dir) {
  std::vector<frl::FrlOutcome> federated;
  const bool needs_frl = std::any_of(config.conditions.begin(), config.conditions.end(),
                                     [](Condition c) { return c != Condition::kLocal; });
  if (needs_frl) federated = downstream::RunFederatedSteps(dataset, pipeline, bus);
  const auto columns = downstream::NonOverlapFeatures(dataset).cols();
  std::vector<downstream::RunReport> reports;
  for (Condition c : config.conditions) {
    try {
      std::vector<downstream::SeedRun> runs;
      reports.push_back(downstream::RunCondition(dataset, c, pipeline, &bus, &runs, federated));
      if (checkpoint_dir != nullptr && c != Condition::kLocal) {
        for (const auto& run : runs) {
          WriteCheckpoint(*checkpoint_dir, c, config, pipeline.lkt, run, columns);
        }
      }
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("condition '{}': {}", downstream::ConditionName(c),
                                        e.what()));
    }
  }
  return reports;
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig& config, const fs::path& out_dir) {
  const data::Dataset dataset = LoadDataset(config);
  const downstream::PipelineConfig pipeline = PipelineFor(config);
  fs::create_directories(out_dir);
  WriteText(out_dir / "config.ini", ToCanonicalText(config));
  MessageBus bus;
  ExperimentResult result;
  result.reports = RunConditions(config, dataset, pipeline, bus, &out_dir);
  result.trace = bus.trace();
  WriteReports(out_dir, result.reports);
  WriteTraceJsonl(out_dir / "trace.jsonl", result.trace);
  return result;
}

ExperimentResult RunSweep(const ExperimentConfig& config, downstream::SweepAxis axis,
                          const std::vector<std::size_t>& values, const fs::path& out_dir) {
  VFKT_ENFORCE(!values.empty(), ErrorCode::kInvalidArgument, "sweep over {} has no values",
               downstream::SweepAxisName(axis));
  const data::Dataset dataset = LoadDataset(config);
  std::vector<data::Dataset> variants;
  for (std::size_t v : values) variants.push_back(downstream::ApplyAxis(dataset, axis, v));
  downstream::PipelineConfig pipeline = PipelineFor(config);
  fs::create_directories(out_dir);
  WriteText(out_dir / "config.ini", ToCanonicalText(config));
  ExperimentResult result;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const fs::path dir = out_dir / fmt::format("{}-{}", downstream::SweepAxisName(axis), values[i]);
    fs::create_directories(dir);
    MessageBus bus;
    std::vector<downstream::RunReport> reports;
    try {
      reports = RunConditions(config, variants[i], pipeline, bus, nullptr);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{} = {}: {}", downstream::SweepAxisName(axis), values[i],
                                        e.what()));
    }
    for (auto& r : reports) {
      r.axis = std::string(downstream::SweepAxisName(axis));
      r.value = static_cast<double>(values[i]);
    }
    WriteReports(dir, reports);
    WriteTraceJsonl(dir / "trace.jsonl", bus.trace());
    result.reports.insert(result.reports.end(), reports.begin(), reports.end());
    const auto& t = bus.trace();
    result.trace.insert(result.trace.end(), t.begin(), t.end());
  }
  return result;
}

ExtensionResult AddDataHospital(const fs::path& run_dir, data::PartyState party,
                                const fs::path& out_dir) {
  const ExperimentConfig config = LoadConfig(run_dir / "config.ini");
  data::Dataset dataset = LoadDataset(config);
  party.role = data::PartyRole::kData;
  party.labels.reset();
  for (const auto& p : dataset.data_parties) {
    VFKT_ENFORCE(p.party_id != party.party_id, ErrorCode::kDuplicate,
                 "a data hospital named '{}' is already part of the run", party.party_id);
  }
  if (config.standardize) {
    party.local_features = data::Standardize(party.local_features).matrix;
  }
  dataset.data_parties.push_back(std::move(party));
  dataset.Validate();

  const downstream::PipelineConfig pipeline = PipelineFor(config);
  const auto columns = downstream::NonOverlapFeatures(dataset).cols();
  const std::string hash = ConfigHash(config);

  // Check every stored checkpoint before any communication happens.
  std::vector<std::pair<Condition, std::vector<lkt::LktCheckpoint>>> stored;
  for (Condition c : config.conditions) {
    if (c == Condition::kLocal) continue;
    std::vector<lkt::LktCheckpoint> per_seed;
    for (std::uint64_t seed : pipeline.seeds) {
      lkt::LktCheckpoint ck = lkt::LoadCheckpoint(CheckpointPath(run_dir, c, seed), columns);
      VFKT_ENFORCE(ck.config_hash == hash, ErrorCode::kSchemaMismatch,
                   "checkpoint for seed {} was written by config {}, the run config is {}", seed,
                   ck.config_hash, hash);
      per_seed.push_back(std::move(ck));
    }
    stored.emplace_back(c, std::move(per_seed));
  }
  VFKT_ENFORCE(!stored.empty(), ErrorCode::kInvalidArgument,
               "the run has no non-local condition to extend");

  MessageBus bus;
  const frl::FrlOutcome added =
      downstream::RunFederatedStep(dataset, dataset.data_parties.size() - 1, pipeline, bus);

  fs::create_directories(out_dir);
  WriteText(out_dir / "config.ini", ToCanonicalText(config));
  ExtensionResult result;
  for (const auto& [c, per_seed] : stored) {
    downstream::RunReport report;
    report.condition = std::string(downstream::ConditionName(c));
    report.config_hash = hash;
    for (std::size_t i = 0; i < per_seed.size(); ++i) {
      downstream::SeedRun run = downstream::ExtendSeedRun(
          dataset, per_seed[i].pairs, added, c, pipeline, pipeline.seeds[i]);
      WriteCheckpoint(out_dir, c, config, pipeline.lkt, run, columns);
      report.seeds.push_back(run.seed);
      report.accuracies.push_back(run.accuracy);
      result.runs.push_back(std::move(run));
    }
    report.Summarize();
    result.reports.push_back(std::move(report));
  }
  result.trace = bus.trace();
  WriteReports(out_dir, result.reports);
  WriteTraceJsonl(out_dir / "trace.jsonl", result.trace);
  return result;
}

}  // namespace vfkt::orchestrator
