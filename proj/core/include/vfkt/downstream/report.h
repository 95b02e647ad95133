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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vfkt::downstream {

enum class Condition { kLocal, kUniTrans, kNoMi, kNoCl };

// Tags: local, unitrans, ablation-no-mi, ablation-no-cl.
std::string_view ConditionName(Condition condition);
Condition ParseCondition(std::string_view name);

struct RunReport {
  std::string condition;
  std::optional<std::string> axis;
  std::optional<double> value;
  std::vector<std::uint64_t> seeds;
  std::vector<double> accuracies;
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1) standard deviation; 0 for one seed
  std::optional<double> wall_clock_s;
  std::string config_hash;

  // Recomputes mean and std from `accuracies`.
  void Summarize();
  // Throws unless seeds and accuracies align and the summary matches.
  void Validate() const;
};

double Mean(const std::vector<double>& values);
double SampleStd(const std::vector<double>& values);

std::string ReportToJson(const RunReport& report);
RunReport ReportFromJson(std::string_view text);
void WriteReport(const std::string& path, const RunReport& report);
RunReport ReadReport(const std::string& path);

}  // namespace vfkt::downstream
