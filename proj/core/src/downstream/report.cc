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

#include "vfkt/downstream/report.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nlohmann/json.hpp"
#include "vfkt/error.h"

namespace vfkt::downstream {

using nlohmann::json;

std::string_view ConditionName(Condition condition) {
  switch (condition) {
    case Condition::kLocal:
      return "local";
    case Condition::kUniTrans:
      return "unitrans";
    case Condition::kNoMi:
      return "ablation-no-mi";
    case Condition::kNoCl:
      return "ablation-no-cl";
  }
  return "unknown";
}

Condition ParseCondition(std::string_view name) {
  for (Condition c : {Condition::kLocal, Condition::kUniTrans, Condition::kNoMi,
                      Condition::kNoCl}) {
    if (ConditionName(c) == name) return c;
  }
  Throw(ErrorCode::kInvalidArgument,
        "unknown condition '{}' (expected local, unitrans, ablation-no-mi or ablation-no-cl)",
        name);
}

double Mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double SampleStd(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double m = Mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

void RunReport::Summarize() {
  mean = Mean(accuracies);
  std = SampleStd(accuracies);
}

void RunReport::Validate() const {
  ParseCondition(condition);
  VFKT_ENFORCE(seeds.size() == accuracies.size(), ErrorCode::kSchemaMismatch,
               "report has {} seeds but {} accuracies", seeds.size(), accuracies.size());
  VFKT_ENFORCE(mean == Mean(accuracies) && std == SampleStd(accuracies),
               ErrorCode::kSchemaMismatch, "report summary does not match its accuracies");
}

std::string ReportToJson(const RunReport& report) {
  json j;
  j["condition"] = report.condition;
  j["axis"] = report.axis ? json(*report.axis) : json(nullptr);
  j["value"] = report.value ? json(*report.value) : json(nullptr);
  j["seeds"] = report.seeds;
  j["accuracies"] = report.accuracies;
  j["mean"] = report.mean;
  j["std"] = report.std;
  j["wall_clock_s"] = report.wall_clock_s ? json(*report.wall_clock_s) : json(nullptr);
  j["config_hash"] = report.config_hash;
  return j.dump(2) + "\n";
}

RunReport ReportFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    Throw(ErrorCode::kParse, "report is not valid JSON: {}", e.what());
  }
  RunReport r;
  try {
    r.condition = j.at("condition").get<std::string>();
    if (!j.at("axis").is_null()) r.axis = j["axis"].get<std::string>();
    if (!j.at("value").is_null()) r.value = j["value"].get<double>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    r.accuracies = j.at("accuracies").get<std::vector<double>>();
    r.mean = j.at("mean").get<double>();
    r.std = j.at("std").get<double>();
    if (!j.at("wall_clock_s").is_null()) r.wall_clock_s = j["wall_clock_s"].get<double>();
    r.config_hash = j.at("config_hash").get<std::string>();
  } catch (const json::exception& e) {
    Throw(ErrorCode::kSchemaMismatch, "report has an unexpected shape: {}", e.what());
  }
  return r;
}

void WriteReport(const std::string& path, const RunReport& report) {
  std::ofstream out(path, std::ios::binary);
  VFKT_ENFORCE(out.good(), ErrorCode::kIo, "cannot write report '{}'", path);
  out << ReportToJson(report);
  VFKT_ENFORCE(out.good(), ErrorCode::kIo, "failed writing report '{}'", path);
}

RunReport ReadReport(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  VFKT_ENFORCE(in.good(), ErrorCode::kNotFound, "cannot open report '{}'", path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ReportFromJson(buffer.str());
}

}  // namespace vfkt::downstream
