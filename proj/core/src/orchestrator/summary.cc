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

#include "vfkt/orchestrator/summary.h"

#include <algorithm>
#include <map>
#include <tuple>

#include "fmt/format.h"
#include "nlohmann/json.hpp"
#include "vfkt/error.h"

namespace vfkt::orchestrator {

namespace fs = std::filesystem;
using downstream::RunReport;

TableFormat ParseTableFormat(std::string_view name) {
  if (name == "md") return TableFormat::kMarkdown;
  if (name == "csv") return TableFormat::kCsv;
  if (name == "json") return TableFormat::kJson;
  Throw(ErrorCode::kInvalidArgument, "unknown format '{}' (expected md, csv or json)", name);
}

namespace {

int ConditionRank(const std::string& name) {
  return static_cast<int>(downstream::ParseCondition(name));
}

std::string Setting(const RunReport& r) {
  if (!r.axis) return "run";
  return fmt::format("{} = {}", *r.axis, r.value ? fmt::format("{}", *r.value) : "?");
}

}  // namespace

std::vector<RunReport> CollectReports(const fs::path& dir) {
  VFKT_ENFORCE(fs::is_directory(dir), ErrorCode::kNotFound, "no such directory '{}'",
               dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        entry.path().parent_path().filename() == "reports") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<RunReport> out;
  for (const auto& f : files) {
    try {
      out.push_back(downstream::ReadReport(f.string()));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("{}: {}", f.string(), e.what()));
    }
  }
  VFKT_ENFORCE(!out.empty(), ErrorCode::kNotFound, "no reports under '{}'", dir.string());
  std::stable_sort(out.begin(), out.end(), [](const RunReport& a, const RunReport& b) {
    return std::make_tuple(a.axis.value_or(""), a.value.value_or(0.0),
                           ConditionRank(a.condition)) <
           std::make_tuple(b.axis.value_or(""), b.value.value_or(0.0),
                           ConditionRank(b.condition));
  });
  return out;
}

std::string RenderReports(const std::vector<RunReport>& reports, TableFormat format) {
  if (format == TableFormat::kJson) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& r : reports) array.push_back(nlohmann::json::parse(ReportToJson(r)));
    return array.dump(2) + "\n";
  }
  if (format == TableFormat::kCsv) {
    std::string out = "condition,axis,value,seeds,mean,std,wall_clock_s,config_hash\n";
    for (const auto& r : reports) {
      out += fmt::format("{},{},{},{},{:.6f},{:.6f},{},{}\n", r.condition, r.axis.value_or(""),
                         r.value ? fmt::format("{}", *r.value) : "", r.seeds.size(), r.mean,
                         r.std, r.wall_clock_s ? fmt::format("{:.3f}", *r.wall_clock_s) : "",
                         r.config_hash);
    }
    return out;
  }
  std::vector<std::string> conditions;
  std::vector<std::string> settings;
  std::map<std::pair<std::string, std::string>, const RunReport*> cells;
  for (const auto& r : reports) {
    if (std::find(conditions.begin(), conditions.end(), r.condition) == conditions.end()) {
      conditions.push_back(r.condition);
    }
    const std::string s = Setting(r);
    if (std::find(settings.begin(), settings.end(), s) == settings.end()) settings.push_back(s);
    cells[{s, r.condition}] = &r;
  }
  std::sort(conditions.begin(), conditions.end(), [](const auto& a, const auto& b) {
    return ConditionRank(a) < ConditionRank(b);
  });
  std::string out = "| setting |";
  std::string rule = "|---|";
  for (const auto& c : conditions) {
    out += fmt::format(" {} |", c);
    rule += "---|";
  }
  out += "\n" + rule + "\n";
  for (const auto& s : settings) {
    out += fmt::format("| {} |", s);
    for (const auto& c : conditions) {
      auto it = cells.find({s, c});
      if (it == cells.end()) {
        out += " - |";
      } else {
        out += fmt::format(" {:.4f} ± {:.4f} |", it->second->mean, it->second->std);
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace vfkt::orchestrator
