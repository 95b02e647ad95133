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

// Drives the vfkt binary end to end. VFKT_CLI_PATH is set by the build.

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"
#include "vfkt/downstream/report.h"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vfkt_cli_test_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "mini.ini") << "[experiment]\n"
                                        "name = mini\n"
                                        "seed = 3\n"
                                        "repeats = 2\n"
                                        "conditions = local, unitrans\n"
                                        "\n"
                                        "[synthetic]\n"
                                        "task_rows = 500\n"
                                        "overlap_rows = 150\n"
                                        "data_features = 6\n"
                                        "\n"
                                        "[lkt]\n"
                                        "epochs = 3\n"
                                        "finetune_epochs = 2\n"
                                        "\n"
                                        "[downstream]\n"
                                        "epochs = 20\n";
  }

  Outcome Run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = std::string("cd '") + dir_.string() + "' && '" VFKT_CLI_PATH "' " +
                            args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Outcome o;
    o.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    o.out = ReadFile(out);
    o.err = ReadFile(err);
    return o;
  }

  fs::path dir_;
};

TEST_F(CliTest, MissingConfigExitsTwoAndNamesPath) {
  const Outcome o = Run("run --config does-not-exist.ini");
  EXPECT_EQ(o.exit_code, 2);
  const auto j = nlohmann::json::parse(o.err);
  EXPECT_EQ(j["error"]["code"], "not_found");
  EXPECT_EQ(j["error"]["command"], "run");
  EXPECT_NE(j["error"]["message"].get<std::string>().find("does-not-exist.ini"),
            std::string::npos);
}

TEST_F(CliTest, UnknownFlagIsAUsageError) {
  const Outcome o = Run("run --config mini.ini --frobnicate");
  EXPECT_EQ(o.exit_code, 2);
  EXPECT_EQ(nlohmann::json::parse(o.err)["error"]["code"], "usage");
}

TEST_F(CliTest, InvalidConfigReportsTheLine) {
  std::ofstream(dir_ / "bad.ini") << "[experiment]\nrepeats = many\n";
  const Outcome o = Run("run --config bad.ini");
  EXPECT_EQ(o.exit_code, 2);
  const auto message = nlohmann::json::parse(o.err)["error"]["message"].get<std::string>();
  EXPECT_NE(message.find("bad.ini:2"), std::string::npos) << message;
}

TEST_F(CliTest, RunThenReportMarkdown) {
  const Outcome run = Run("run --config mini.ini --out r");
  ASSERT_EQ(run.exit_code, 0) << run.err;
  EXPECT_TRUE(fs::exists(dir_ / "r" / "reports" / "local.json"));
  EXPECT_TRUE(fs::exists(dir_ / "r" / "reports" / "unitrans.json"));
  EXPECT_TRUE(fs::exists(dir_ / "r" / "trace.jsonl"));

  const Outcome md = Run("report --in r --format md");
  ASSERT_EQ(md.exit_code, 0) << md.err;
  EXPECT_EQ(md.out.rfind("| setting | local | unitrans |\n", 0), 0u) << md.out;
  const auto local = vfkt::downstream::ReadReport((dir_ / "r" / "reports" / "local.json").string());
  char cell[64];
  std::snprintf(cell, sizeof(cell), "| %.4f ± %.4f |", local.mean, local.std);
  EXPECT_NE(md.out.find(cell), std::string::npos) << md.out;

  const Outcome csv = Run("report --in r --format csv");
  ASSERT_EQ(csv.exit_code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 3);
  const Outcome json = Run("report --in r --format json");
  ASSERT_EQ(json.exit_code, 0);
  EXPECT_EQ(nlohmann::json::parse(json.out).size(), 2u);
}

TEST_F(CliTest, EnvironmentSetsTheOutputRoot) {
  const Outcome o = Run("run --config mini.ini");
  ASSERT_EQ(o.exit_code, 0) << o.err;
  EXPECT_TRUE(fs::exists(dir_ / "runs" / "mini" / "reports" / "local.json"));
  const std::string root = (dir_ / "elsewhere").string();
  ::setenv("VFKT_OUTPUT_ROOT", root.c_str(), 1);
  const Outcome e = Run("run --config mini.ini");
  ::unsetenv("VFKT_OUTPUT_ROOT");
  ASSERT_EQ(e.exit_code, 0) << e.err;
  EXPECT_TRUE(fs::exists(dir_ / "elsewhere" / "mini" / "reports" / "local.json"));
}

TEST_F(CliTest, SweepWritesOneDirectoryPerValue) {
  const Outcome o = Run("sweep --config mini.ini --axis overlap_count --values 50,100 --out s");
  ASSERT_EQ(o.exit_code, 0) << o.err;
  int dirs = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "s")) dirs += entry.is_directory();
  EXPECT_EQ(dirs, 2);
  EXPECT_TRUE(fs::exists(dir_ / "s" / "overlap_count-50" / "reports" / "unitrans.json"));
  EXPECT_TRUE(fs::exists(dir_ / "s" / "overlap_count-100" / "reports" / "unitrans.json"));
}

TEST_F(CliTest, SweepRejectsUnknownAxis) {
  const Outcome o = Run("sweep --config mini.ini --axis colour --values 1 --out s");
  EXPECT_EQ(o.exit_code, 2);
  EXPECT_FALSE(nlohmann::json::parse(o.err)["error"]["message"].get<std::string>().empty());
}

TEST_F(CliTest, GeneratedCsvReproducesTheSyntheticRun) {
  const Outcome gen = Run("gen-synthetic --spec mini.ini --out gen");
  ASSERT_EQ(gen.exit_code, 0) << gen.err;
  EXPECT_TRUE(fs::exists(dir_ / "gen" / "task.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "gen" / "hospital1.csv"));
  ASSERT_EQ(Run("run --config gen/experiment.ini --out from_csv").exit_code, 0);
  ASSERT_EQ(Run("run --config mini.ini --out from_spec").exit_code, 0);
  for (const char* c : {"local", "unitrans"}) {
    const std::string name = std::string(c) + ".json";
    const auto a = vfkt::downstream::ReadReport((dir_ / "from_csv" / "reports" / name).string());
    const auto b = vfkt::downstream::ReadReport((dir_ / "from_spec" / "reports" / name).string());
    EXPECT_EQ(a.accuracies, b.accuracies) << c;
  }
}

TEST_F(CliTest, AddHospitalExtendsARun) {
  ASSERT_EQ(Run("gen-synthetic --spec mini.ini --out gen").exit_code, 0);
  ASSERT_EQ(Run("run --config mini.ini --out r").exit_code, 0);
  const Outcome add = Run("add-hospital --run r --data gen/hospital1.csv --name copy");
  ASSERT_EQ(add.exit_code, 0) << add.err;
  EXPECT_TRUE(fs::exists(dir_ / "r" / "add-copy" / "reports" / "unitrans.json"));
  const Outcome dup = Run("add-hospital --run r --data gen/hospital1.csv --name hospital1");
  EXPECT_EQ(dup.exit_code, 2);
  EXPECT_EQ(nlohmann::json::parse(dup.err)["error"]["code"], "duplicate");
}

}  // namespace
