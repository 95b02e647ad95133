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

#include <filesystem>
#include <fstream>
#include <set>

#include "gtest/gtest.h"
#include "support/oracles.h"
#include "vfkt/data/csv.h"
#include "vfkt/data/preprocess.h"
#include "vfkt/data/psi.h"
#include "vfkt/error.h"
#include "vfkt/numerics/random.h"

namespace vfkt::data {
namespace {

namespace fs = std::filesystem;

class CsvTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vfkt_csv_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path Write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p;
  }

  fs::path dir_;
};

TEST_F(CsvTest, ParsesFeaturesAndLabels) {
  const auto p = Write("a.csv", "id,f1,f2,y\np1,1.5,2,yes\np2,-3,4e2,no\np3,0,0,yes\n");
  const CsvTable t = LoadCsv(p, "id", "y");
  EXPECT_EQ(t.features.num_rows(), 3u);
  EXPECT_EQ(t.features.num_cols(), 2u);
  EXPECT_EQ(t.features.cols(), (std::vector<std::string>{"f1", "f2"}));
  EXPECT_DOUBLE_EQ(t.features.values()(1, 1), 400.0);
  ASSERT_TRUE(t.labels.has_value());
  EXPECT_EQ(t.labels->labels(), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(t.labels->num_classes(), 2);
  EXPECT_EQ(t.class_names, (std::vector<std::string>{"no", "yes"}));
}

TEST_F(CsvTest, NumericLabelsSortNumerically) {
  const auto p = Write("a.csv", "id,f,y\na,1,10\nb,2,9\nc,3,-1\n");
  const CsvTable t = LoadCsv(p, "id", "y");
  EXPECT_EQ(t.labels->labels(), (std::vector<int>{2, 1, 0}));
}

TEST_F(CsvTest, DuplicateIdNamed) {
  const auto p = Write("dup.csv", "id,f1\np1,1\np2,2\np1,3\n");
  try {
    LoadCsv(p, "id");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicate);
    EXPECT_NE(std::string(e.what()).find("'p1'"), std::string::npos);
  }
}

TEST_F(CsvTest, UnparsableCellReportsCoordinates) {
  const auto p = Write("bad.csv", "id,f1,f2\np1,1,2\np2,abc,3\n");
  try {
    LoadCsv(p, "id");
    FAIL();
  } catch (const Error& e) {
    const std::string msg = e.what();
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'f1'"), std::string::npos) << msg;
    EXPECT_NE(msg.find("'abc'"), std::string::npos) << msg;
  }
}

TEST_F(CsvTest, MissingValueIsAnError) {
  const auto p = Write("gap.csv", "id,f1,f2\np1,,2\n");
  EXPECT_THROW(LoadCsv(p, "id"), Error);
}

TEST_F(CsvTest, MissingFile) {
  try {
    LoadCsv(dir_ / "nope.csv", "id");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST_F(CsvTest, QuotedFields) {
  EXPECT_EQ(SplitCsvLine(R"(a,"b,c","d""e",)"),
            (std::vector<std::string>{"a", "b,c", "d\"e", ""}));
}

// Write-then-load reproduces every value bit for bit.
TEST_F(CsvTest, RoundTripIsBitExact) {
  numerics::Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 3 + trial;
    std::vector<SampleId> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back({"s" + std::to_string(i)});
    numerics::Matrix m = rng.NormalMatrix(n, 4, std::pow(10.0, trial - 2));
    m(0, 0) = 0.1;
    m(1, 1) = 1e-300;
    FeatureMatrix fm(ids, {"a", "b,c", "d", "e"}, m);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 3);
    LabelVector lv(ids, labels, 3);
    const auto p = dir_ / ("rt" + std::to_string(trial) + ".csv");
    WriteCsv(p, fm, &lv);
    const CsvTable back = LoadCsv(p, "id", "label");
    EXPECT_EQ(back.features.values(), fm.values());
    EXPECT_EQ(back.features.cols(), fm.cols());
    EXPECT_EQ(back.labels->labels(), labels);
  }
}

std::vector<SampleId> Ids(std::initializer_list<const char*> raw) {
  std::vector<SampleId> out;
  for (const char* s : raw) out.push_back({s});
  return out;
}

TEST(PsiTest, BasicIntersection) {
  const auto task = Ids({"a", "b", "c"});
  const auto data = Ids({"d", "c", "b"});
  const OverlapIndex o = PsiIntersect(task, data);
  EXPECT_EQ(o.overlapping_ids, Ids({"b", "c"}));
  EXPECT_EQ(o.task_row_map, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(o.data_row_map, (std::vector<std::size_t>{2, 1}));
}

TEST(PsiTest, DisjointGivesEmpty) {
  EXPECT_TRUE(PsiIntersect(Ids({"a"}), Ids({"b"})).empty());
}

TEST(PsiTest, IdenticalListsOverlapFully) {
  const auto ids = Ids({"z", "x", "y"});
  const OverlapIndex o = PsiIntersect(ids, ids);
  EXPECT_EQ(o.overlapping_ids, Ids({"x", "y", "z"}));
}

TEST(PsiTest, RejectsDuplicatesAndEmpty) {
  EXPECT_THROW(PsiIntersect(Ids({"a", "a"}), Ids({"a"})), Error);
  EXPECT_THROW(PsiIntersect({}, Ids({"a"})), Error);
}

TEST(PsiProperty, CommutativeResultSet) {
  numerics::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SampleId> a;
    std::vector<SampleId> b;
    for (int i = 0; i < 40; ++i) {
      if (rng.Uniform() < 0.6) a.push_back({"id" + std::to_string(i)});
      if (rng.Uniform() < 0.6) b.push_back({"id" + std::to_string(i)});
    }
    if (a.empty() || b.empty()) continue;
    const auto ab = PsiIntersect(a, b, trial);
    const auto ba = PsiIntersect(b, a, trial);
    EXPECT_EQ(ab.overlapping_ids, ba.overlapping_ids);
    EXPECT_EQ(ab.task_row_map, ba.data_row_map);
    for (std::size_t k = 0; k < ab.size(); ++k) {
      EXPECT_EQ(a[ab.task_row_map[k]], ab.overlapping_ids[k]);
      EXPECT_EQ(b[ab.data_row_map[k]], ab.overlapping_ids[k]);
    }
  }
}

PartyState MakeTask(std::size_t n, std::size_t p) {
  std::vector<SampleId> ids;
  std::vector<int> labels;
  for (std::size_t i = 0; i < n; ++i) {
    ids.push_back({"t" + std::to_string(i)});
    labels.push_back(static_cast<int>(i % 2));
  }
  std::vector<std::string> cols;
  for (std::size_t j = 0; j < p; ++j) cols.push_back("f" + std::to_string(j + 1));
  FeatureMatrix fm(ids, cols, testing::RandomGaussian(n, p, 5));
  return PartyState{"task", PartyRole::kTask, fm, LabelVector(ids, labels, 2)};
}

TEST(SplitPartitionsTest, RowCounts) {
  const PartyState task = MakeTask(10, 5);
  const auto data_ids = Ids({"t1", "t3", "t5", "t7", "x9"});
  const OverlapIndex o = PsiIntersect(task.local_features.rows(), data_ids);
  const TaskPartitions parts = SplitPartitions(task, o);
  EXPECT_EQ(parts.overlap.num_rows(), 4u);
  EXPECT_EQ(parts.non_overlap.num_rows(), 6u);
  EXPECT_EQ(parts.non_overlap_labels.size(), 6u);
  parts.non_overlap_labels.CheckAlignedWith(parts.non_overlap);
}

TEST(SplitPartitionsTest, CrossDomainColumns) {
  const PartyState task = MakeTask(10, 5);
  const OverlapIndex o =
      PsiIntersect(task.local_features.rows(), Ids({"t0", "t2", "t4", "t6"}));
  ColumnSplit split{{"f1", "f2", "f3", "f4", "f5"}, {"f1", "f2", "f3"}};
  const TaskPartitions parts = SplitPartitions(task, o, split);
  EXPECT_EQ(parts.overlap.num_rows(), 4u);
  EXPECT_EQ(parts.overlap.num_cols(), 5u);
  EXPECT_EQ(parts.non_overlap.num_rows(), 6u);
  EXPECT_EQ(parts.non_overlap.num_cols(), 3u);
}

TEST(SplitPartitionsTest, EmptyOverlapRejected) {
  const PartyState task = MakeTask(4, 2);
  const OverlapIndex o = PsiIntersect(task.local_features.rows(), Ids({"zz"}));
  EXPECT_THROW(SplitPartitions(task, o), Error);
}

TEST(SplitPartitionsTest, UnknownIdRejected) {
  const PartyState task = MakeTask(4, 2);
  OverlapIndex o;
  o.overlapping_ids = Ids({"ghost"});
  o.task_row_map = {0};
  o.data_row_map = {0};
  EXPECT_THROW(SplitPartitions(task, o), Error);
}

TEST(SplitPartitionsProperty, DisjointAndExhaustive) {
  numerics::Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const PartyState task = MakeTask(20, 3);
    std::vector<SampleId> data_ids;
    for (int i = 0; i < 20; ++i) {
      if (rng.Uniform() < 0.5) data_ids.push_back({"t" + std::to_string(i)});
    }
    data_ids.push_back({"t0"});
    data_ids.push_back({"external"});
    std::sort(data_ids.begin(), data_ids.end());
    data_ids.erase(std::unique(data_ids.begin(), data_ids.end()), data_ids.end());
    const OverlapIndex o = PsiIntersect(task.local_features.rows(), data_ids);
    if (o.size() == 20) continue;
    const TaskPartitions parts = SplitPartitions(task, o);
    std::set<SampleId> ol(parts.overlap.rows().begin(), parts.overlap.rows().end());
    std::set<SampleId> nl(parts.non_overlap.rows().begin(), parts.non_overlap.rows().end());
    EXPECT_EQ(ol.size() + nl.size(), 20u);
    for (const auto& id : ol) EXPECT_FALSE(nl.contains(id));
  }
}

FeatureMatrix Column(std::vector<double> v) {
  std::vector<SampleId> ids;
  for (std::size_t i = 0; i < v.size(); ++i) ids.push_back({std::to_string(i)});
  return FeatureMatrix(ids, {"c"}, numerics::Matrix(v.size(), 1, v));
}

TEST(StandardizeTest, SampleStdDeviation) {
  const auto r = Standardize(Column({1, 2, 3}));
  EXPECT_DOUBLE_EQ(r.matrix.values()(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(r.matrix.values()(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(r.matrix.values()(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(r.stats.stddev[0], 1.0);
}

TEST(StandardizeTest, ConstantColumnFlagged) {
  const auto r = Standardize(Column({5, 5, 5}));
  EXPECT_TRUE(r.stats.constant[0]);
  for (double v : r.matrix.values().data()) EXPECT_EQ(v, 0.0);
}

TEST(StandardizeTest, NeedsTwoRows) { EXPECT_THROW(Standardize(Column({1})), Error); }

TEST(StandardizeProperty, Idempotent) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    std::vector<SampleId> ids;
    for (int i = 0; i < 30; ++i) ids.push_back({std::to_string(i)});
    numerics::Matrix m = testing::RandomGaussian(30, 4, seed);
    for (double& v : m.data()) v = 3.0 * v + 7.0;
    const auto once = Standardize(FeatureMatrix(ids, {"a", "b", "c", "d"}, m));
    const auto twice = Standardize(once.matrix);
    EXPECT_LT(numerics::FrobeniusNorm(twice.matrix.values() - once.matrix.values()), 1e-12);
  }
}

TEST(FeatureMatrixTest, Invariants) {
  EXPECT_THROW(FeatureMatrix(Ids({"a", "a"}), {"x"}, numerics::Matrix(2, 1)), Error);
  EXPECT_THROW(FeatureMatrix({}, {"x"}, numerics::Matrix(0, 1)), Error);
  numerics::Matrix bad(1, 1);
  bad(0, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(FeatureMatrix(Ids({"a"}), {"x"}, bad), Error);
}

TEST(PartyStateTest, RolesValidated) {
  PartyState task = MakeTask(4, 2);
  PartyState data{"d", PartyRole::kData, task.local_features, task.labels};
  EXPECT_THROW(data.Validate(), Error);
  data.labels.reset();
  EXPECT_NO_THROW(ValidateParties({task, data}));
  EXPECT_THROW(ValidateParties({data}), Error);
  EXPECT_THROW(ValidateParties({task, task}), Error);
}

}  // namespace
}  // namespace vfkt::data
