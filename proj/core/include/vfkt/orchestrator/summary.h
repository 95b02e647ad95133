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
#include <string>
#include <string_view>
#include <vector>

#include "vfkt/downstream/report.h"

namespace vfkt::orchestrator {

enum class TableFormat { kMarkdown, kCsv, kJson };

TableFormat ParseTableFormat(std::string_view name);

// Every RunReport JSON file under `dir` (any depth, files inside a
// "reports" directory), ordered by axis, value and condition.
std::vector<downstream::RunReport> CollectReports(const std::filesystem::path& dir);

// Markdown: one row per setting (axis = value, or "run"), one column per
// condition, cells "mean ± std". CSV: one line per report. JSON: an array
// of reports.
std::string RenderReports(const std::vector<downstream::RunReport>& reports, TableFormat format);

}  // namespace vfkt::orchestrator
