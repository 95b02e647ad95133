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

#include "vfkt/data/csv.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "vfkt/error.h"

namespace vfkt::data {
namespace {

std::optional<double> ParseDouble(const std::string& cell) {
  std::size_t begin = 0;
  std::size_t end = cell.size();
  while (begin < end && (cell[begin] == ' ' || cell[begin] == '\t')) ++begin;
  while (end > begin && (cell[end - 1] == ' ' || cell[end - 1] == '\t')) --end;
  if (begin == end) return std::nullopt;
  if (cell[begin] == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data() + begin, cell.data() + end, value);
  if (ec != std::errc() || ptr != cell.data() + end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string QuoteIfNeeded(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string FormatDouble(double v) {
  // Shortest representation that parses back to the same bits.
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

CsvTable LoadCsv(const std::filesystem::path& path, const std::string& id_column,
                 const std::optional<std::string>& label_column) {
  std::ifstream in(path);
  VFKT_ENFORCE(in.good(), ErrorCode::kNotFound, "cannot open CSV file '{}'", path.string());
  std::string line;
  VFKT_ENFORCE(static_cast<bool>(std::getline(in, line)), ErrorCode::kParse,
               "{}: missing header row", path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  // Strip a UTF-8 byte order mark.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const std::vector<std::string> header = SplitCsvLine(line);

  std::optional<std::size_t> id_pos;
  std::optional<std::size_t> label_pos;
  std::vector<std::size_t> feature_pos;
  std::vector<std::string> feature_names;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == id_column) {
      id_pos = j;
    } else if (label_column && header[j] == *label_column) {
      label_pos = j;
    } else {
      feature_pos.push_back(j);
      feature_names.push_back(header[j]);
    }
  }
  VFKT_ENFORCE(id_pos.has_value(), ErrorCode::kParse, "{}: id column '{}' not in header",
               path.string(), id_column);
  VFKT_ENFORCE(!label_column || label_pos.has_value(), ErrorCode::kParse,
               "{}: label column '{}' not in header", path.string(), *label_column);

  std::vector<SampleId> ids;
  std::vector<double> values;
  std::vector<std::string> raw_labels;
  std::set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(line);
    VFKT_ENFORCE(cells.size() == header.size(), ErrorCode::kParse,
                 "{}:{}: expected {} cells, found {}", path.string(), line_no, header.size(),
                 cells.size());
    const std::string& id = cells[*id_pos];
    VFKT_ENFORCE(!id.empty(), ErrorCode::kParse, "{}:{}: empty sample id", path.string(),
                 line_no);
    VFKT_ENFORCE(seen.insert(id).second, ErrorCode::kDuplicate,
                 "{}:{}: duplicate sample id '{}'", path.string(), line_no, id);
    ids.push_back(SampleId{id});
    for (std::size_t k = 0; k < feature_pos.size(); ++k) {
      const std::string& cell = cells[feature_pos[k]];
      const auto v = ParseDouble(cell);
      VFKT_ENFORCE(v.has_value(), ErrorCode::kParse,
                   "{}: row {} (line {}), column '{}': cannot parse '{}' as a number",
                   path.string(), ids.size(), line_no, feature_names[k], cell);
      values.push_back(*v);
    }
    if (label_pos) {
      VFKT_ENFORCE(!cells[*label_pos].empty(), ErrorCode::kParse, "{}:{}: missing label",
                   path.string(), line_no);
      raw_labels.push_back(cells[*label_pos]);
    }
  }
  VFKT_ENFORCE(!ids.empty(), ErrorCode::kParse, "{}: no data rows", path.string());
  VFKT_ENFORCE(!feature_names.empty(), ErrorCode::kParse, "{}: no feature columns",
               path.string());

  const std::size_t n_rows = ids.size();
  FeatureMatrix features(ids, feature_names,
                         Matrix(n_rows, feature_names.size(), std::move(values)));
  CsvTable table{std::move(features), std::nullopt, {}};
  if (label_pos) {
    std::vector<std::string> classes(raw_labels.begin(), raw_labels.end());
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    const bool numeric = std::all_of(classes.begin(), classes.end(),
                                     [](const std::string& s) { return ParseDouble(s).has_value(); });
    if (numeric) {
      std::stable_sort(classes.begin(), classes.end(), [](const std::string& a, const std::string& b) {
        return *ParseDouble(a) < *ParseDouble(b);
      });
    }
    std::map<std::string, int> code;
    for (std::size_t k = 0; k < classes.size(); ++k) code[classes[k]] = static_cast<int>(k);
    std::vector<int> labels;
    labels.reserve(raw_labels.size());
    for (const auto& l : raw_labels) labels.push_back(code.at(l));
    table.labels = LabelVector(std::move(ids), std::move(labels), static_cast<int>(classes.size()));
    table.class_names = std::move(classes);
  }
  return table;
}

void WriteCsv(const std::filesystem::path& path, const FeatureMatrix& features,
              const LabelVector* labels, const std::string& id_column,
              const std::string& label_column) {
  if (labels != nullptr) labels->CheckAlignedWith(features);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  VFKT_ENFORCE(out.good(), ErrorCode::kIo, "cannot write CSV file '{}'", path.string());
  out << QuoteIfNeeded(id_column);
  for (const auto& c : features.cols()) out << ',' << QuoteIfNeeded(c);
  if (labels != nullptr) out << ',' << QuoteIfNeeded(label_column);
  out << '\n';
  for (std::size_t i = 0; i < features.num_rows(); ++i) {
    out << QuoteIfNeeded(features.rows()[i].value);
    for (double v : features.values().row(i)) out << ',' << FormatDouble(v);
    if (labels != nullptr) out << ',' << labels->labels()[i];
    out << '\n';
  }
  VFKT_ENFORCE(out.good(), ErrorCode::kIo, "failed writing '{}'", path.string());
}

}  // namespace vfkt::data
