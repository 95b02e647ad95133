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

#include "vfkt/orchestrator/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fmt/format.h"
#include "fmt/ranges.h"
#include "vfkt/error.h"
#include "vfkt/hash.h"
#include "vfkt/numerics/random.h"

namespace vfkt::orchestrator {

namespace {

constexpr std::string_view kSections[] = {"experiment", "data",       "synthetic", "frl",
                                          "lkt",        "downstream", "sweep"};

std::string Trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

// Raw key/value view of the file with line numbers, consumed by typed
// getters. Anything left unconsumed is reported as unknown.
class Reader {
 public:
  Reader(std::string_view text, std::string origin) : origin_(std::move(origin)) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      const std::string s = Trim(raw);
      if (s.empty() || s[0] == '#' || s[0] == ';') continue;
      if (s.front() == '[') {
        if (s.back() != ']') Fail(line, "malformed section header '{}'", s);
        section = Trim(std::string_view(s).substr(1, s.size() - 2));
        if (std::find(std::begin(kSections), std::end(kSections), section) ==
            std::end(kSections)) {
          Fail(line, "unknown section [{}]", section);
        }
        if (!seen_sections_.insert(section).second) {
          Fail(line, "section [{}] appears twice", section);
        }
        continue;
      }
      const auto eq = s.find('=');
      if (eq == std::string::npos) Fail(line, "expected 'key = value', got '{}'", s);
      if (section.empty()) Fail(line, "key outside of any section");
      const std::string key = Trim(std::string_view(s).substr(0, eq));
      const std::string value = Trim(std::string_view(s).substr(eq + 1));
      if (key.empty()) Fail(line, "missing key before '='");
      auto& keys = entries_[section];
      if (keys.contains(key)) {
        Fail(line, "duplicate key '{}' in [{}] (first on line {})", key, section,
             keys[key].line);
      }
      keys[key] = {value, line, false};
    }
  }

  template <typename... Args>
  [[noreturn]] void Fail(int line, fmt::format_string<Args...> format, Args&&... args) const {
    const std::string message = fmt::format(format, std::forward<Args>(args)...);
    if (line <= 0) Throw(ErrorCode::kParse, "{}: {}", origin_, message);
    Throw(ErrorCode::kParse, "{}:{}: {}", origin_, line, message);
  }

  Entry* Find(const std::string& section, const std::string& key) {
    auto s = entries_.find(section);
    if (s == entries_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.used = true;
    return &k->second;
  }

  bool Has(const std::string& section, const std::string& key) const {
    auto s = entries_.find(section);
    return s != entries_.end() && s->second.contains(key);
  }

  std::optional<std::string> Str(const std::string& section, const std::string& key) {
    if (Entry* e = Find(section, key)) {
      if (e->value.empty()) Fail(e->line, "empty value for '{}'", key);
      return e->value;
    }
    return std::nullopt;
  }

  template <typename T>
  std::optional<T> Unsigned(const std::string& section, const std::string& key,
                            T minimum = 0) {
    Entry* e = Find(section, key);
    if (e == nullptr) return std::nullopt;
    return ParseUnsigned<T>(*e, key, minimum);
  }

  std::optional<double> Real(const std::string& section, const std::string& key) {
    Entry* e = Find(section, key);
    if (e == nullptr) return std::nullopt;
    return ParseReal(*e, key);
  }

  std::optional<bool> Bool(const std::string& section, const std::string& key) {
    Entry* e = Find(section, key);
    if (e == nullptr) return std::nullopt;
    if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
    if (e->value == "false" || e->value == "no" || e->value == "0") return false;
    Fail(e->line, "'{}' must be true or false, got '{}'", key, e->value);
  }

  std::optional<std::vector<std::string>> List(const std::string& section,
                                               const std::string& key) {
    Entry* e = Find(section, key);
    if (e == nullptr) return std::nullopt;
    std::vector<std::string> out;
    std::string_view rest = e->value;
    while (true) {
      const auto comma = rest.find(',');
      const std::string item = Trim(rest.substr(0, comma));
      if (item.empty()) Fail(e->line, "empty item in list '{}'", key);
      out.push_back(item);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  std::optional<std::vector<std::size_t>> SizeList(const std::string& section,
                                                   const std::string& key, std::size_t minimum) {
    auto items = List(section, key);
    if (!items) return std::nullopt;
    Entry& e = *Find(section, key);
    std::vector<std::size_t> out;
    for (const auto& item : *items) {
      Entry one{item, e.line, true};
      out.push_back(ParseUnsigned<std::size_t>(one, key, minimum));
    }
    return out;
  }

  std::optional<std::vector<double>> RealList(const std::string& section,
                                              const std::string& key) {
    auto items = List(section, key);
    if (!items) return std::nullopt;
    Entry& e = *Find(section, key);
    std::vector<double> out;
    for (const auto& item : *items) {
      Entry one{item, e.line, true};
      out.push_back(ParseReal(one, key));
    }
    return out;
  }

  int LineOf(const std::string& section, const std::string& key) const {
    return entries_.at(section).at(key).line;
  }

  // Rejects keys that the rest of the file makes meaningless.
  void RequireAbsent(const std::string& section, std::initializer_list<const char*> keys,
                     std::string_view why) {
    for (const char* key : keys) {
      if (Has(section, key)) Fail(LineOf(section, key), "'{}' {}", key, why);
    }
  }

  void CheckAllUsed() const {
    for (const auto& [section, keys] : entries_) {
      for (const auto& [key, entry] : keys) {
        if (!entry.used) Fail(entry.line, "unknown key '{}' in [{}]", key, section);
      }
    }
  }

  const std::string& origin() const { return origin_; }

 private:
  template <typename T>
  T ParseUnsigned(const Entry& e, const std::string& key, T minimum) const {
    T v{};
    const char* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      Fail(e.line, "'{}' must be a non-negative integer, got '{}'", key, e.value);
    }
    if (v < minimum) Fail(e.line, "'{}' must be >= {}, got {}", key, minimum, v);
    return v;
  }

  double ParseReal(const Entry& e, const std::string& key) const {
    double v = 0.0;
    const char* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      Fail(e.line, "'{}' must be a finite number, got '{}'", key, e.value);
    }
    return v;
  }

  std::string origin_;
  std::set<std::string> seen_sections_;
  std::map<std::string, std::map<std::string, Entry>> entries_;
};

template <typename T>
void Set(T& target, const std::optional<T>& value) {
  if (value) target = *value;
}

// Reports a failed component validation at the line of the first of
// `keys` that the message mentions, else of the first one present.
template <typename Check>
void Checked(Reader& r, const std::string& section, std::initializer_list<const char*> keys,
             Check&& check) {
  try {
    check();
  } catch (const Error& e) {
    const std::string message = e.what();
    for (const char* key : keys) {
      if (r.Has(section, key) && message.find(key) != std::string::npos) {
        r.Fail(r.LineOf(section, key), "{}", message);
      }
    }
    for (const char* key : keys) {
      if (r.Has(section, key)) r.Fail(r.LineOf(section, key), "{}", message);
    }
    Throw(ErrorCode::kParse, "{}: {}", r.origin(), message);
  }
}

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) path = base / path;
  return path.lexically_normal();
}

}  // namespace

std::vector<std::uint64_t> ExperimentConfig::RunSeeds() const {
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < repeats; ++i) seeds.push_back(seed + i);
  return seeds;
}

downstream::PipelineConfig ExperimentConfig::Pipeline() const {
  downstream::PipelineConfig p;
  p.frl = frl;
  p.lkt = lkt;
  p.classifier = classifier;
  p.training = training;
  p.split = split;
  p.seeds = RunSeeds();
  p.config_hash = ConfigHash(*this);
  return p;
}

SyntheticSpec ExperimentConfig::EffectiveSynthetic() const {
  SyntheticSpec s = synthetic;
  s.seed = synthetic_seed.value_or(numerics::DeriveSeed(seed, "synthetic"));
  return s;
}

ExperimentConfig ParseConfig(std::string_view text, std::string_view origin,
                             const std::filesystem::path& base_dir) {
  Reader r(text, std::string(origin));
  ExperimentConfig c;

  // [experiment]
  Set(c.name, r.Str("experiment", "name"));
  Set(c.seed, r.Unsigned<std::uint64_t>("experiment", "seed"));
  Set(c.repeats, r.Unsigned<std::size_t>("experiment", "repeats", 1));
  if (auto list = r.List("experiment", "conditions")) {
    c.conditions.clear();
    const int line = r.LineOf("experiment", "conditions");
    for (const auto& name : *list) {
      downstream::Condition cond{};
      try {
        cond = downstream::ParseCondition(name);
      } catch (const Error& e) {
        r.Fail(line, "{}", e.what());
      }
      if (std::find(c.conditions.begin(), c.conditions.end(), cond) != c.conditions.end()) {
        r.Fail(line, "condition '{}' listed twice", name);
      }
      c.conditions.push_back(cond);
    }
  }

  // [data]
  if (auto source = r.Str("data", "source")) {
    if (*source == "synthetic") {
      c.source = DataSource::kSynthetic;
    } else if (*source == "csv") {
      c.source = DataSource::kCsv;
    } else {
      r.Fail(r.LineOf("data", "source"), "source must be synthetic or csv, got '{}'", *source);
    }
  }
  std::string mode = "intra";
  Set(mode, r.Str("data", "mode"));
  if (mode != "intra" && mode != "cross") {
    r.Fail(r.LineOf("data", "mode"), "mode must be intra or cross, got '{}'", mode);
  }
  if (mode == "cross") {
    auto overlap = r.List("data", "overlap_columns");
    auto local = r.List("data", "local_columns");
    if (!overlap || !local) {
      r.Fail(r.Has("data", "mode") ? r.LineOf("data", "mode") : 0,
             "cross mode needs both overlap_columns and local_columns");
    }
    c.column_split = data::ColumnSplit{*overlap, *local};
  } else {
    r.RequireAbsent("data", {"overlap_columns", "local_columns"}, "needs mode = cross");
  }
  Set(c.standardize, r.Bool("data", "standardize"));
  if (auto n = r.Unsigned<std::size_t>("data", "overlap_count", 1)) c.overlap_count = n;
  Set(c.overlap_ids, r.List("data", "overlap_ids"));
  if (c.overlap_count && !c.overlap_ids.empty()) {
    r.Fail(r.LineOf("data", "overlap_ids"), "give either overlap_count or overlap_ids, not both");
  }

  if (c.source == DataSource::kCsv) {
    auto task = r.Str("data", "task_csv");
    auto parts = r.List("data", "data_csv");
    if (!task || !parts) r.Fail(0, "source = csv needs task_csv and data_csv in [data]");
    c.csv.task_path = Resolve(base_dir, *task);
    for (const auto& p : *parts) c.csv.data_paths.push_back(Resolve(base_dir, p));
    Set(c.csv.task_id_column, r.Str("data", "task_id_column"));
    Set(c.csv.task_label_column, r.Str("data", "task_label_column"));
    Set(c.csv.data_id_column, r.Str("data", "data_id_column"));
    if (auto names = r.List("data", "data_names")) {
      if (names->size() != parts->size()) {
        r.Fail(r.LineOf("data", "data_names"), "data_names has {} entries for {} data_csv files",
               names->size(), parts->size());
      }
      c.csv.data_names = *names;
    } else {
      for (const auto& p : c.csv.data_paths) c.csv.data_names.push_back(p.stem().string());
    }
  } else {
    r.RequireAbsent("data",
                    {"task_csv", "data_csv", "task_id_column", "task_label_column",
                     "data_id_column", "data_names"},
                    "needs source = csv");
  }

  // [synthetic]
  SyntheticSpec& s = c.synthetic;
  Set(s.task_rows, r.Unsigned<std::size_t>("synthetic", "task_rows", 2));
  Set(s.overlap_rows, r.Unsigned<std::size_t>("synthetic", "overlap_rows"));
  Set(s.data_only_rows, r.Unsigned<std::size_t>("synthetic", "data_only_rows"));
  Set(s.task_features, r.Unsigned<std::size_t>("synthetic", "task_features", 1));
  Set(s.data_features, r.SizeList("synthetic", "data_features", 1));
  Set(s.shared_latent, r.Unsigned<std::size_t>("synthetic", "shared_latent"));
  Set(s.task_latent, r.Unsigned<std::size_t>("synthetic", "task_latent"));
  Set(s.data_latent, r.Unsigned<std::size_t>("synthetic", "data_latent"));
  Set(s.task_signal, r.Real("synthetic", "task_signal"));
  Set(s.data_signal, r.Real("synthetic", "data_signal"));
  Set(s.noise, r.Real("synthetic", "noise"));
  Set(s.label_weights, r.RealList("synthetic", "label_weights"));
  if (auto k = r.Unsigned<int>("synthetic", "num_classes", 2)) s.num_classes = *k;
  if (auto seed = r.Unsigned<std::uint64_t>("synthetic", "seed")) c.synthetic_seed = seed;
  if (c.source == DataSource::kSynthetic) {
    Checked(r, "synthetic",
            {"task_rows", "overlap_rows", "task_features", "data_features", "shared_latent",
             "task_latent", "data_latent", "noise", "label_weights", "num_classes"},
            [&] { s.Validate(); });
  }

  // [frl]
  if (auto method = r.Str("frl", "method")) {
    try {
      c.frl.method = frl::ParseFrlMethod(*method);
    } catch (const Error& e) {
      r.Fail(r.LineOf("frl", "method"), "{}", e.what());
    }
  }
  Set(c.frl.fedsvd.block_size, r.Unsigned<std::size_t>("frl", "block_size"));
  if (auto rank = r.Unsigned<std::size_t>("frl", "rank", 1)) c.frl.fedsvd.rank = rank;
  if (auto n = r.Unsigned<int>("frl", "iter_num", 1)) c.frl.vfedpca.iter_num = *n;
  if (auto n = r.Unsigned<int>("frl", "period_num", 1)) c.frl.vfedpca.period_num = *n;
  Set(c.frl.vfedpca.warm_start, r.Bool("frl", "warm_start"));

  // [lkt]
  lkt::LktConfig& l = c.lkt;
  Set(l.latent_width, r.Unsigned<std::size_t>("lkt", "latent_width"));
  Set(l.hidden_widths, r.SizeList("lkt", "hidden_widths", 1));
  Set(l.mine_hidden_widths, r.SizeList("lkt", "mine_hidden_widths", 1));
  const auto lambda = r.Real("lkt", "lambda");
  const auto beta0 = r.Real("lkt", "beta0");
  const auto beta1 = r.Real("lkt", "beta1");
  if (lambda && (beta0 || beta1)) {
    r.Fail(r.LineOf("lkt", "lambda"), "give either lambda or beta0/beta1, not both");
  }
  if (beta0.has_value() != beta1.has_value()) {
    r.Fail(r.LineOf("lkt", beta0 ? "beta0" : "beta1"), "beta0 and beta1 go together");
  }
  if (lambda) l.SetLambda(*lambda);
  if (beta0) l.SetBetas(*beta0, *beta1);
  Set(l.tau, r.Real("lkt", "tau"));
  Set(l.learning_rate, r.Real("lkt", "learning_rate"));
  if (auto rate = r.Real("lkt", "mine_learning_rate")) l.mine_learning_rate = rate;
  Set(l.batch_size, r.Unsigned<std::size_t>("lkt", "batch_size", 1));
  if (auto n = r.Unsigned<int>("lkt", "epochs", 1)) l.epochs = *n;
  if (auto n = r.Unsigned<int>("lkt", "finetune_epochs")) l.finetune_epochs = *n;
  if (auto v = r.Str("lkt", "reconstruction")) {
    if (*v == "overlap") {
      l.reconstruction = lkt::ReconstructionSource::kOverlap;
    } else if (*v == "non_overlap") {
      l.reconstruction = lkt::ReconstructionSource::kNonOverlap;
    } else {
      r.Fail(r.LineOf("lkt", "reconstruction"),
             "reconstruction must be overlap or non_overlap, got '{}'", *v);
    }
  }
  if (auto v = r.Str("lkt", "contrastive")) {
    if (*v == "anchored") {
      l.contrastive = lkt::ContrastiveForm::kAnchored;
    } else if (*v == "literal") {
      l.contrastive = lkt::ContrastiveForm::kLiteral;
    } else {
      r.Fail(r.LineOf("lkt", "contrastive"), "contrastive must be anchored or literal, got '{}'",
             *v);
    }
  }
  if (c.column_split && l.reconstruction == lkt::ReconstructionSource::kOverlap &&
      r.Has("lkt", "reconstruction")) {
    r.Fail(r.LineOf("lkt", "reconstruction"),
           "cross mode reconstructs non-overlapping rows; use reconstruction = non_overlap");
  }
  if (c.column_split) l.reconstruction = lkt::ReconstructionSource::kNonOverlap;
  Checked(r, "lkt",
          {"latent_width", "mine_hidden_widths", "hidden_widths", "beta0", "beta1", "lambda",
           "tau", "learning_rate", "mine_learning_rate", "batch_size", "epochs",
           "finetune_epochs"},
          [&] { l.Validate(); });

  // [downstream]
  if (auto kind = r.Str("downstream", "classifier")) {
    try {
      c.classifier = downstream::ParseClassifierKind(*kind);
    } catch (const Error& e) {
      r.Fail(r.LineOf("downstream", "classifier"), "{}", e.what());
    }
  }
  if (auto n = r.Unsigned<int>("downstream", "epochs", 1)) c.training.epochs = *n;
  Set(c.training.batch_size, r.Unsigned<std::size_t>("downstream", "batch_size", 1));
  Set(c.training.learning_rate, r.Real("downstream", "learning_rate"));
  Set(c.training.l2, r.Real("downstream", "l2"));
  if (c.training.learning_rate <= 0) {
    r.Fail(r.LineOf("downstream", "learning_rate"), "learning_rate must be > 0");
  }
  if (c.training.l2 < 0) r.Fail(r.LineOf("downstream", "l2"), "l2 must be >= 0");
  Set(c.split.train_fraction, r.Real("downstream", "train_fraction"));
  if (auto f = r.Real("downstream", "few_shot_fraction")) c.split.few_shot_fraction = f;
  Checked(r, "downstream", {"train_fraction", "few_shot_fraction"}, [&] { c.split.Validate(); });

  // [sweep]
  if (r.Has("sweep", "axis") || r.Has("sweep", "values")) {
    auto axis = r.Str("sweep", "axis");
    auto values = r.SizeList("sweep", "values", 1);
    if (!axis || !values) r.Fail(0, "[sweep] needs both axis and values");
    SweepSpec sweep;
    try {
      sweep.axis = downstream::ParseSweepAxis(*axis);
    } catch (const Error& e) {
      r.Fail(r.LineOf("sweep", "axis"), "{}", e.what());
    }
    sweep.values = *values;
    c.sweep = sweep;
  }

  r.CheckAllUsed();
  return c;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  VFKT_ENFORCE(in.good(), ErrorCode::kNotFound, "cannot open config '{}'", path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto base = std::filesystem::absolute(path).parent_path();
  return ParseConfig(buffer.str(), path.string(), base);
}

namespace {

std::string Joined(const std::vector<std::string>& items) {
  return fmt::format("{}", fmt::join(items, ", "));
}

template <typename T>
std::string JoinedNumbers(const std::vector<T>& items) {
  return fmt::format("{}", fmt::join(items, ", "));
}

std::string CanonicalText(const ExperimentConfig& c, bool with_name) {
  std::string out;
  auto line = [&](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  out += "[experiment]\n";
  if (with_name) line("name", c.name);
  line("seed", c.seed);
  line("repeats", c.repeats);
  std::vector<std::string> conditions;
  for (auto cond : c.conditions) conditions.emplace_back(downstream::ConditionName(cond));
  line("conditions", Joined(conditions));

  out += "\n[data]\n";
  line("source", c.source == DataSource::kCsv ? "csv" : "synthetic");
  line("mode", c.column_split ? "cross" : "intra");
  if (c.column_split) {
    line("overlap_columns", Joined(c.column_split->overlap_columns));
    line("local_columns", Joined(c.column_split->local_columns));
  }
  line("standardize", c.standardize ? "true" : "false");
  if (c.overlap_count) line("overlap_count", *c.overlap_count);
  if (!c.overlap_ids.empty()) line("overlap_ids", Joined(c.overlap_ids));
  if (c.source == DataSource::kCsv) {
    line("task_csv", std::filesystem::absolute(c.csv.task_path).lexically_normal().string());
    line("task_id_column", c.csv.task_id_column);
    line("task_label_column", c.csv.task_label_column);
    std::vector<std::string> paths;
    for (const auto& p : c.csv.data_paths) {
      paths.push_back(std::filesystem::absolute(p).lexically_normal().string());
    }
    line("data_csv", Joined(paths));
    line("data_id_column", c.csv.data_id_column);
    line("data_names", Joined(c.csv.data_names));
  } else {
    const SyntheticSpec s = c.EffectiveSynthetic();
    out += "\n[synthetic]\n";
    line("task_rows", s.task_rows);
    line("overlap_rows", s.overlap_rows);
    line("data_only_rows", s.data_only_rows);
    line("task_features", s.task_features);
    line("data_features", JoinedNumbers(s.data_features));
    line("shared_latent", s.shared_latent);
    line("task_latent", s.task_latent);
    line("data_latent", s.data_latent);
    line("task_signal", s.task_signal);
    line("data_signal", s.data_signal);
    line("noise", s.noise);
    if (!s.label_weights.empty()) line("label_weights", JoinedNumbers(s.label_weights));
    line("num_classes", s.num_classes);
    line("seed", s.seed);
  }

  out += "\n[frl]\n";
  line("method", frl::FrlMethodName(c.frl.method));
  line("block_size", c.frl.fedsvd.block_size);
  if (c.frl.fedsvd.rank) line("rank", *c.frl.fedsvd.rank);
  line("iter_num", c.frl.vfedpca.iter_num);
  line("period_num", c.frl.vfedpca.period_num);
  line("warm_start", c.frl.vfedpca.warm_start ? "true" : "false");

  const lkt::LktConfig& l = c.lkt;
  out += "\n[lkt]\n";
  line("latent_width", l.latent_width);
  line("hidden_widths", JoinedNumbers(l.hidden_widths));
  line("mine_hidden_widths", JoinedNumbers(l.mine_hidden_widths));
  line("beta0", l.recon_weight);
  line("beta1", l.mi_weight);
  line("tau", l.tau);
  line("learning_rate", l.learning_rate);
  if (l.mine_learning_rate) line("mine_learning_rate", *l.mine_learning_rate);
  line("batch_size", l.batch_size);
  line("epochs", l.epochs);
  line("finetune_epochs", l.finetune_epochs);
  line("reconstruction", lkt::ReconstructionSourceName(l.reconstruction));
  line("contrastive", lkt::ContrastiveFormName(l.contrastive));

  out += "\n[downstream]\n";
  line("classifier", downstream::ClassifierKindName(c.classifier));
  line("epochs", c.training.epochs);
  line("batch_size", c.training.batch_size);
  line("learning_rate", c.training.learning_rate);
  line("l2", c.training.l2);
  line("train_fraction", c.split.train_fraction);
  if (c.split.few_shot_fraction) line("few_shot_fraction", *c.split.few_shot_fraction);

  if (c.sweep) {
    out += "\n[sweep]\n";
    line("axis", downstream::SweepAxisName(c.sweep->axis));
    line("values", JoinedNumbers(c.sweep->values));
  }
  return out;
}

}  // namespace

std::string ToCanonicalText(const ExperimentConfig& config) { return CanonicalText(config, true); }

std::string ConfigHash(const ExperimentConfig& config) {
  return HexDigest(Fnv1a64(CanonicalText(config, false)));
}

}  // namespace vfkt::orchestrator
