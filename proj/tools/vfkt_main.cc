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

// Command-line front end: run, sweep, report, gen-synthetic, add-hospital.
//
// Failures print one JSON object on stderr,
//   {"error": {"code": "...", "message": "...", "command": "..."}}
// and exit with 2 for bad input (usage, config, missing paths, schema) or 1
// for failures while computing.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "nlohmann/json.hpp"
#include "vfkt/data/csv.h"
#include "vfkt/error.h"
#include "vfkt/orchestrator/config.h"
#include "vfkt/orchestrator/experiment.h"
#include "vfkt/orchestrator/summary.h"
#include "vfkt/orchestrator/synthetic.h"

namespace fs = std::filesystem;
namespace orch = vfkt::orchestrator;
namespace ds = vfkt::downstream;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitRuntime = 1;

int ExitCodeFor(vfkt::ErrorCode code) {
  switch (code) {
    case vfkt::ErrorCode::kInvalidArgument:
    case vfkt::ErrorCode::kDimensionMismatch:
    case vfkt::ErrorCode::kParse:
    case vfkt::ErrorCode::kNotFound:
    case vfkt::ErrorCode::kDuplicate:
    case vfkt::ErrorCode::kSchemaMismatch:
      return kExitInput;
    default:
      return kExitRuntime;
  }
}

int ReportError(const std::string& command, std::string_view code, const std::string& message,
                int exit_code) {
  nlohmann::json j;
  j["error"] = {{"code", code}, {"message", message}, {"command", command}};
  std::cerr << j.dump() << std::endl;
  return exit_code;
}

void PrintReports(const std::vector<ds::RunReport>& reports, const fs::path& out_dir) {
  for (const auto& r : reports) {
    std::string setting;
    if (r.axis && r.value) setting = fmt::format(" [{} = {}]", *r.axis, *r.value);
    fmt::print("{}{}: {:.4f} ± {:.4f} over {} seeds\n", r.condition, setting, r.mean, r.std,
               r.seeds.size());
  }
  fmt::print("results in {}\n", out_dir.string());
}

struct RunArgs {
  std::string config;
  std::string out;
};

int Run(const RunArgs& a) {
  const auto config = orch::LoadConfig(a.config);
  std::optional<fs::path> out;
  if (!a.out.empty()) out = a.out;
  const fs::path dir = orch::ResolveOutputDir(out, config.name);
  const auto result = orch::RunExperiment(config, dir);
  PrintReports(result.reports, dir);
  return 0;
}

struct SweepArgs {
  std::string config;
  std::string axis;
  std::vector<std::size_t> values;
  std::string out;
};

int Sweep(const SweepArgs& a) {
  const auto config = orch::LoadConfig(a.config);
  ds::SweepAxis axis;
  std::vector<std::size_t> values = a.values;
  if (!a.axis.empty()) {
    axis = ds::ParseSweepAxis(a.axis);
  } else {
    VFKT_ENFORCE(config.sweep.has_value(), vfkt::ErrorCode::kInvalidArgument,
                 "no --axis given and '{}' has no [sweep] section", a.config);
    axis = config.sweep->axis;
  }
  if (values.empty()) {
    VFKT_ENFORCE(config.sweep.has_value() && config.sweep->axis == axis,
                 vfkt::ErrorCode::kInvalidArgument,
                 "no --values given and '{}' has no [sweep] values for this axis", a.config);
    values = config.sweep->values;
  }
  std::optional<fs::path> out;
  if (!a.out.empty()) out = a.out;
  const fs::path dir = orch::ResolveOutputDir(out, config.name);
  const auto result = orch::RunSweep(config, axis, values, dir);
  PrintReports(result.reports, dir);
  return 0;
}

struct ReportArgs {
  std::string in;
  std::string format = "md";
  std::string out;
};

int Report(const ReportArgs& a) {
  const auto format = orch::ParseTableFormat(a.format);
  const auto reports = orch::CollectReports(a.in);
  const std::string text = orch::RenderReports(reports, format);
  if (a.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return 0;
  }
  std::ofstream file(a.out, std::ios::binary);
  VFKT_ENFORCE(file.good(), vfkt::ErrorCode::kIo, "cannot write '{}'", a.out);
  file << text;
  return 0;
}

struct GenArgs {
  std::string spec;
  std::string out;
};

// Writes task.csv (with labels), one CSV per hospital and experiment.ini,
// a copy of the spec that reads the generated files instead.
int GenSynthetic(const GenArgs& a) {
  auto config = orch::LoadConfig(a.spec);
  const auto generated = orch::GenerateSynthetic(config.EffectiveSynthetic());
  const fs::path dir = fs::absolute(a.out);
  fs::create_directories(dir);

  const auto& dataset = generated.dataset;
  vfkt::data::WriteCsv(dir / "task.csv", dataset.task.local_features,
                       &*dataset.task.labels);
  config.source = orch::DataSource::kCsv;
  config.csv = orch::CsvSource{};
  config.csv.task_path = dir / "task.csv";
  for (const auto& party : dataset.data_parties) {
    const fs::path path = dir / (party.party_id + ".csv");
    vfkt::data::WriteCsv(path, party.local_features);
    config.csv.data_paths.push_back(path);
    config.csv.data_names.push_back(party.party_id);
  }
  const std::string text = orch::ToCanonicalText(config);
  std::ofstream file(dir / "experiment.ini", std::ios::binary);
  VFKT_ENFORCE(file.good(), vfkt::ErrorCode::kIo, "cannot write '{}'",
               (dir / "experiment.ini").string());
  file << text;
  fmt::print("wrote {} task rows and {} hospital files to {}\n",
             dataset.task.local_features.num_rows(), dataset.data_parties.size(), dir.string());
  return 0;
}

struct AddArgs {
  std::string run;
  std::string data;
  std::string name;
  std::string id_column = "id";
  std::string out;
};

int AddHospital(const AddArgs& a) {
  auto party = orch::LoadDataParty(a.data, a.id_column, a.name);
  const fs::path out = a.out.empty() ? fs::path(a.run) / ("add-" + a.name) : fs::path(a.out);
  const auto result = orch::AddDataHospital(a.run, std::move(party), out);
  PrintReports(result.reports, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertical federated knowledge transfer simulator", "vfkt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("vfkt 0.1.0"));

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run every condition and seed of an experiment");
  run->add_option("--config", run_args.config, "Experiment file")->required();
  run->add_option("--out", run_args.out,
                  fmt::format("Output directory (default ${}/<name> or runs/<name>)",
                              orch::kOutputRootEnv));

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Repeat an experiment along one data axis");
  sweep->add_option("--config", sweep_args.config, "Experiment file")->required();
  sweep->add_option("--axis", sweep_args.axis,
                    "task_features, data_features, overlap_count or num_data_hospitals");
  sweep->add_option("--values", sweep_args.values, "Comma-separated axis values")
      ->delimiter(',');
  sweep->add_option("--out", sweep_args.out, "Output directory");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Tabulate the reports under a directory");
  report->add_option("--in", report_args.in, "Run or sweep directory")->required();
  report->add_option("--format", report_args.format, "md, csv or json")
      ->capture_default_str();
  report->add_option("--out", report_args.out, "Write to a file instead of stdout");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen-synthetic", "Write a synthetic dataset as CSV files");
  gen->add_option("--spec", gen_args.spec, "Experiment file with a [synthetic] section")
      ->required();
  gen->add_option("--out", gen_args.out, "Output directory")->required();

  AddArgs add_args;
  auto* add = app.add_subcommand("add-hospital", "Extend a finished run with a data hospital");
  add->add_option("--run", add_args.run, "Directory written by `run`")->required();
  add->add_option("--data", add_args.data, "Hospital CSV file")->required();
  add->add_option("--name", add_args.name, "Party name of the new hospital")->required();
  add->add_option("--id-column", add_args.id_column, "Sample id column")
      ->capture_default_str();
  add->add_option("--out", add_args.out, "Output directory (default <run>/add-<name>)");

  std::string command = "vfkt";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    for (const auto* sub : app.get_subcommands()) command = sub->get_name();
    return ReportError(command, "usage", e.what(), kExitInput);
  }
  command = app.get_subcommands().front()->get_name();

  try {
    if (*run) return Run(run_args);
    if (*sweep) return Sweep(sweep_args);
    if (*report) return Report(report_args);
    if (*gen) return GenSynthetic(gen_args);
    if (*add) return AddHospital(add_args);
  } catch (const vfkt::Error& e) {
    return ReportError(command, vfkt::ErrorCodeName(e.code()), e.what(), ExitCodeFor(e.code()));
  } catch (const std::exception& e) {
    return ReportError(command, "internal", e.what(), kExitRuntime);
  }
  return kExitRuntime;
}
