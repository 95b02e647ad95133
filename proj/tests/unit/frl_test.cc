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

#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "support/oracles.h"
#include "vfkt/error.h"
#include "vfkt/frl/fedsvd.h"
#include "vfkt/frl/protocol.h"
#include "vfkt/frl/vfedpca.h"
#include "vfkt/numerics/linalg.h"
#include "vfkt/numerics/random.h"
#include "vfkt/orchestrator/actor.h"

namespace vfkt::frl {
namespace {

using numerics::Matrix;
using orchestrator::MessageBus;
using testing::RandomGaussian;

data::FeatureMatrix MakeTable(const std::vector<std::string>& ids, const Matrix& values) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < values.cols(); ++j) names.push_back("f" + std::to_string(j));
  return data::FeatureMatrix(data::ToSampleIds(ids), names, values);
}

std::vector<std::string> Ids(const std::string& prefix, int begin, int end) {
  std::vector<std::string> out;
  for (int i = begin; i < end; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Matrix CentralizedU(const Matrix& h_t, const Matrix& h_d) {
  return testing::SvdViaGram(numerics::HConcat(h_t, h_d)).u;
}

TEST(FedSvdKeygenTest, ShapesAndOrthogonality) {
  const std::vector<std::size_t> sizes{3, 2};
  const auto masks = FedSvdKeygen(4, sizes, 7);
  ASSERT_EQ(masks.size(), 2u);
  EXPECT_EQ(masks[0].a.rows(), 4u);
  EXPECT_EQ(masks[0].b_slice.rows(), 3u);
  EXPECT_EQ(masks[0].b_slice.cols(), 5u);
  EXPECT_EQ(masks[1].b_slice.rows(), 2u);
  EXPECT_EQ(masks[1].b_slice.cols(), 5u);
  EXPECT_EQ(masks[0].a, masks[1].a);
  EXPECT_LT(numerics::OrthonormalityResidual(masks[0].a), 1e-10);
  const Matrix b = numerics::VConcat(masks[0].b_slice, masks[1].b_slice);
  EXPECT_LT(numerics::OrthonormalityResidual(b), 1e-10);
}

TEST(FedSvdKeygenTest, SameSeedSameMasks) {
  const std::vector<std::size_t> sizes{4, 3};
  const auto first = FedSvdKeygen(6, sizes, 11, 2);
  const auto second = FedSvdKeygen(6, sizes, 11, 2);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(first[k].a, second[k].a);
    EXPECT_EQ(first[k].b_slice, second[k].b_slice);
  }
  const auto other = FedSvdKeygen(6, sizes, 12, 2);
  EXPECT_NE(first[0].a, other[0].a);
}

TEST(FedSvdMaskTest, IdentityMasksPad) {
  const Matrix h = Matrix::FromRows({{1, 2}, {3, 4}, {5, 6}});
  MaskPair masks{Matrix::Identity(3), numerics::HConcat(Matrix::Identity(2), Matrix(2, 1))};
  const Matrix masked = FedSvdMask(h, masks);
  EXPECT_EQ(masked, Matrix::FromRows({{1, 2, 0}, {3, 4, 0}, {5, 6, 0}}));
}

TEST(FedSvdMaskTest, DimensionMismatchThrows) {
  MaskPair masks{Matrix::Identity(4), Matrix::Identity(2)};
  try {
    FedSvdMask(Matrix(3, 2), masks);
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(FedSvdMaskTest, MaskedSingularValuesMatchCentralized) {
  const Matrix h_t = RandomGaussian(4, 2, 1);
  const Matrix h_d = RandomGaussian(4, 1, 2);
  const std::vector<std::size_t> sizes{2, 1};
  const auto masks = FedSvdKeygen(4, sizes, 3);
  const Matrix masked =
      numerics::HConcat(FedSvdMask(h_t, masks[0]), FedSvdMask(h_d, masks[1]));
  const auto oracle = testing::SvdViaGram(numerics::HConcat(h_t, h_d));
  const auto got = numerics::Svd(masked);
  ASSERT_GE(got.sigma.size(), oracle.sigma.size());
  for (std::size_t i = 0; i < oracle.sigma.size(); ++i) {
    EXPECT_NEAR(got.sigma[i], oracle.sigma[i], 1e-8);
  }
  // Norm preservation of the stacked system.
  EXPECT_NEAR(numerics::FrobeniusNorm(masked),
              numerics::FrobeniusNorm(numerics::HConcat(h_t, h_d)), 1e-10);
}

TEST(FedSvdServerTest, SinglePartyIdentityMasksGivesU) {
  const Matrix h = RandomGaussian(6, 3, 4);
  const Matrix parts[] = {h};
  const Matrix u_hat = FedSvdServer(parts);
  const Matrix oracle = testing::SvdViaGram(h).u;
  const Matrix aligned = testing::AlignColumnSigns(numerics::SliceCols(u_hat, 0, 3), oracle);
  Matrix diff = aligned;
  diff -= oracle;
  EXPECT_LT(numerics::FrobeniusNorm(diff), 1e-8);
}

TEST(FedSvdServerTest, OutputOrthonormalAndRankTruncates) {
  const Matrix parts[] = {RandomGaussian(8, 5, 5), RandomGaussian(8, 5, 6)};
  const Matrix u_hat = FedSvdServer(parts);
  EXPECT_EQ(u_hat.cols(), 5u);
  EXPECT_LT(numerics::OrthonormalityResidual(u_hat), 1e-10);
  EXPECT_EQ(FedSvdServer(parts, 2).cols(), 2u);
}

TEST(FedSvdServerTest, WidthMismatchThrows) {
  const Matrix parts[] = {Matrix(4, 3), Matrix(4, 2)};
  EXPECT_THROW(FedSvdServer(parts), Error);
}

TEST(FedSvdServerTest, ReproducesMaskedInput) {
  const std::vector<std::size_t> sizes{3, 1};
  const auto masks = FedSvdKeygen(6, sizes, 19);
  const Matrix parts[] = {FedSvdMask(RandomGaussian(6, 3, 15), masks[0]),
                          FedSvdMask(RandomGaussian(6, 1, 16), masks[1])};
  const Matrix u_hat = FedSvdServer(parts);
  const Matrix joined = numerics::HConcat(parts[0], parts[1]);
  // Projecting onto the column span of U-hat leaves the input unchanged.
  Matrix diff = numerics::MatMul(u_hat, numerics::MatMulTN(u_hat, joined));
  diff -= joined;
  EXPECT_LT(numerics::FrobeniusNorm(diff), 1e-8);
}

TEST(FedSvdRecoverTest, IdentityMaskIsIdentity) {
  const Matrix u_hat = RandomGaussian(3, 2, 8);
  const auto rep = FedSvdRecover(u_hat, Matrix::Identity(3),
                                 data::ToSampleIds({"a", "b", "c"}));
  EXPECT_EQ(rep.matrix, u_hat);
  EXPECT_EQ(rep.method, FrlMethod::kFedSvd);
}

// Direct composition of keygen, mask, server and recover without the bus.
Matrix RecoverDirect(const Matrix& h_t, const Matrix& h_d, std::uint64_t seed,
                     std::size_t block_size) {
  const std::vector<std::size_t> sizes{h_t.cols(), h_d.cols()};
  const auto masks = FedSvdKeygen(h_t.rows(), sizes, seed, block_size);
  const Matrix parts[] = {FedSvdMask(h_t, masks[0]), FedSvdMask(h_d, masks[1])};
  std::vector<data::SampleId> ids(h_t.rows());
  return FedSvdRecover(FedSvdServer(parts), masks[0].a, ids).matrix;
}

class FedSvdEquivalenceTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(FedSvdEquivalenceTest, MatchesCentralizedSvdUpToSign) {
  const std::uint64_t seed = GetParam();
  const Matrix h_t = RandomGaussian(30, 4, static_cast<unsigned>(seed));
  const Matrix h_d = RandomGaussian(30, 3, static_cast<unsigned>(seed + 100));
  for (std::size_t block : {std::size_t{0}, std::size_t{7}}) {
    const Matrix u = RecoverDirect(h_t, h_d, seed, block);
    const Matrix oracle = CentralizedU(h_t, h_d);
    Matrix diff = testing::AlignColumnSigns(numerics::SliceCols(u, 0, 7), oracle);
    diff -= oracle;
    EXPECT_LT(numerics::FrobeniusNorm(diff), 1e-8) << "block " << block;
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, FedSvdEquivalenceTest, ::testing::Values(1, 2, 3, 4, 5));

TEST(FedSvdRecoverTest, RankOneSpansOracleLine) {
  Matrix h_t(12, 2);
  Matrix h_d(12, 2);
  const Matrix left = RandomGaussian(12, 1, 9);
  const double coeff_t[] = {1.5, -0.5};
  const double coeff_d[] = {2.0, 0.25};
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      h_t(i, j) = left(i, 0) * coeff_t[j];
      h_d(i, j) = left(i, 0) * coeff_d[j];
    }
  }
  const Matrix u = RecoverDirect(h_t, h_d, 21, 0);
  EXPECT_LT(testing::LineAngle(u.Column(0), left.Column(0)), 1e-8);
}

TEST(FedSvdPrivacyTest, MaskedDiffersFromRawAcrossSeeds) {
  const Matrix h_t = RandomGaussian(10, 3, 31);
  const Matrix h_d = RandomGaussian(10, 2, 32);
  const std::vector<std::size_t> sizes{3, 2};
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const auto masks = FedSvdKeygen(10, sizes, seed);
    for (std::size_t k = 0; k < 2; ++k) {
      const Matrix& h = k == 0 ? h_t : h_d;
      const Matrix masked = FedSvdMask(h, masks[k]);
      // Compare against the raw block padded into the masked width.
      Matrix padded(h.rows(), masked.cols());
      const std::size_t offset = k == 0 ? 0 : 3;
      for (std::size_t i = 0; i < h.rows(); ++i) {
        for (std::size_t j = 0; j < h.cols(); ++j) padded(i, offset + j) = h(i, j);
      }
      Matrix diff = masked;
      diff -= padded;
      if (numerics::FrobeniusNorm(diff) <= 0.1 * numerics::FrobeniusNorm(h)) ++failures;
    }
  }
  EXPECT_LE(failures, 1);
}

TEST(VFedPcaLocalTest, DiagonalExample) {
  const Matrix h = Matrix::FromRows({{1, 0}, {0, 0}});
  const auto share = VFedPcaLocal(h, 100, VFedPcaInit(2, 3));
  EXPECT_NEAR(share.eigval, 0.5, 1e-12);
  EXPECT_NEAR(std::abs(share.eigvec[0]), 1.0, 1e-12);
  EXPECT_NEAR(share.eigvec[1], 0.0, 1e-12);
  EXPECT_FALSE(share.zero_data);
}

TEST(VFedPcaLocalTest, MatchesEigenOracle) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const Matrix h = RandomGaussian(20, 5, seed);
    const auto share = VFedPcaLocal(h, 100, VFedPcaInit(20, seed));
    Matrix gram = numerics::MatMulNT(h, h);
    gram *= 1.0 / 5.0;
    const auto oracle = testing::SymmetricEigen(gram);
    EXPECT_LT(testing::LineAngle(share.eigvec, oracle.vectors.Column(0)), 1e-6) << seed;
    EXPECT_NEAR(share.eigval, oracle.values[0], 1e-8 * oracle.values[0]);
    EXPECT_NEAR(numerics::Norm2(share.eigvec), 1.0, 1e-10);
  }
}

TEST(VFedPcaLocalTest, IdenticalPartiesIdenticalShares) {
  const Matrix h = RandomGaussian(9, 4, 17);
  const auto init = VFedPcaInit(9, 5);
  const auto a = VFedPcaLocal(h, 30, init);
  const auto b = VFedPcaLocal(h, 30, init);
  EXPECT_EQ(a.eigvec, b.eigvec);
  EXPECT_EQ(a.eigval, b.eigval);
}

TEST(VFedPcaLocalTest, ZeroDataFlagged) {
  const auto share = VFedPcaLocal(Matrix(4, 2), 10, VFedPcaInit(4, 1));
  EXPECT_TRUE(share.zero_data);
  EXPECT_EQ(share.eigval, 0.0);
}

TEST(VFedPcaAggregateTest, HandArithmetic) {
  const std::vector<EigenShare> shares{{{1.0, 0.0}, 2.0, false}, {{0.0, 1.0}, 3.0, false}};
  const auto agg = VFedPcaAggregate(shares);
  EXPECT_EQ(agg.weights, (std::vector<double>{0.4, 0.6}));
  EXPECT_EQ(agg.u, (Vector{0.4, 0.6}));
  EXPECT_FALSE(agg.degenerate);
}

TEST(VFedPcaAggregateTest, SingleShareIsItsEigvec) {
  const std::vector<EigenShare> shares{{{0.6, 0.8}, 1.7, false}};
  EXPECT_EQ(VFedPcaAggregate(shares).u, (Vector{0.6, 0.8}));
}

TEST(VFedPcaAggregateTest, OppositeSharesDegenerate) {
  const std::vector<EigenShare> shares{{{1.0, 0.0}, 1.0, false}, {{-1.0, 0.0}, 1.0, false}};
  const auto agg = VFedPcaAggregate(shares);
  EXPECT_TRUE(agg.degenerate);
  EXPECT_EQ(numerics::Norm2(agg.u), 0.0);
}

TEST(VFedPcaAggregateTest, AllZeroEigenvaluesThrow) {
  const std::vector<EigenShare> shares{{{1.0, 0.0}, 0.0, true}};
  EXPECT_THROW(VFedPcaAggregate(shares), Error);
}

TEST(VFedPcaAggregateTest, WeightsFormProbabilityVector) {
  numerics::Rng rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<EigenShare> shares;
    const int k = 1 + static_cast<int>(rng.Index(6));
    for (int s = 0; s < k; ++s) shares.push_back({{1.0, 0.0, 0.0}, rng.Uniform() * 10.0, false});
    shares[0].eigval += 1e-3;
    const auto agg = VFedPcaAggregate(shares);
    double total = 0.0;
    for (double w : agg.weights) {
      EXPECT_GE(w, 0.0);
      total += w;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(VFedPcaAggregateTest, AlignSignsAvoidsCancellation) {
  std::vector<EigenShare> shares{{{1.0, 0.0}, 1.0, false}, {{-1.0, 0.0}, 1.0, false}};
  AlignShareSigns(shares);
  const auto agg = VFedPcaAggregate(shares);
  EXPECT_FALSE(agg.degenerate);
  EXPECT_EQ(agg.u, (Vector{1.0, 0.0}));
}

TEST(VFedPcaReconstructTest, RankOneProjection) {
  // H = s * x y^T with unit x, y; u = x gives M = s y, M M^T = s^2 y y^T,
  // normalized to y y^T, so the output equals H y y^T = H.
  const Vector x{0.6, 0.8, 0.0};
  const Vector y{0.0, 1.0};
  Matrix h(3, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) h(i, j) = 2.5 * x[i] * y[j];
  }
  const Matrix out = VFedPcaReconstruct(h, x);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(out(i, j), h(i, j), 1e-12);
  }
}

TEST(VFedPcaReconstructTest, AgainstHandComputedGram) {
  const Matrix h = RandomGaussian(30, 5, 12);
  const Vector u = RandomGaussian(30, 1, 13).Column(0);
  const Matrix out = VFedPcaReconstruct(h, u);
  ASSERT_EQ(out.rows(), 30u);
  ASSERT_EQ(out.cols(), 5u);
  // Independent evaluation of H (M M^T) / ||M M^T||_F.
  std::vector<long double> m(5, 0.0L);
  for (std::size_t j = 0; j < 5; ++j) {
    for (std::size_t i = 0; i < 30; ++i) m[j] += static_cast<long double>(h(i, j)) * u[i];
  }
  long double norm = 0.0L;
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = 0; b < 5; ++b) norm += m[a] * m[a] * m[b] * m[b];
  }
  norm = std::sqrt(norm);
  for (std::size_t i = 0; i < 30; ++i) {
    for (std::size_t b = 0; b < 5; ++b) {
      long double acc = 0.0L;
      for (std::size_t a = 0; a < 5; ++a) acc += h(i, a) * m[a] * m[b];
      EXPECT_NEAR(out(i, b), static_cast<double>(acc / norm), 1e-12);
    }
  }
}

TEST(VFedPcaReconstructTest, ZeroVectorThrows) {
  try {
    VFedPcaReconstruct(RandomGaussian(4, 2, 1), Vector(4, 0.0));
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerate);
  }
}

TEST(VFedPcaReconstructTest, LengthMismatchThrows) {
  EXPECT_THROW(VFedPcaReconstruct(RandomGaussian(4, 2, 1), Vector(3, 1.0)), Error);
}

struct ProtocolFixture {
  Matrix task_values = RandomGaussian(40, 4, 71);
  Matrix data_values = RandomGaussian(36, 3, 72);
  // Task holds t0..t39 under ids s0..s39; data holds s10..s45.
  data::FeatureMatrix task = MakeTable(Ids("s", 0, 40), task_values);
  data::FeatureMatrix data = MakeTable(Ids("s", 10, 46), data_values);
};

TEST(FrlProtocolTest, FedSvdOverBusMatchesCentralized) {
  ProtocolFixture fx;
  for (std::uint64_t schedule : {0, 3, 9}) {
    MessageBus bus;
    FrlOptions options;
    options.fedsvd.seed = 5;
    options.fedsvd.block_size = 8;
    options.schedule_seed = schedule;
    const auto out = RunFederatedRepresentation(bus, {"task", &fx.task}, {"data", &fx.data},
                                                options);
    ASSERT_EQ(out.overlap.size(), 30u);
    EXPECT_EQ(out.representation.rows(), 30u);
    EXPECT_EQ(out.representation.width(), 7u);
    // Overlap in lexicographic id order.
    for (std::size_t i = 0; i < out.overlap.size(); ++i) {
      EXPECT_EQ(fx.task.rows()[out.overlap.task_row_map[i]],
                fx.data.rows()[out.overlap.data_row_map[i]]);
      EXPECT_EQ(out.representation.overlapping_ids[i], fx.task.rows()[out.overlap.task_row_map[i]]);
    }
    const Matrix h_t = numerics::SelectRows(fx.task_values, out.overlap.task_row_map);
    const Matrix h_d = numerics::SelectRows(fx.data_values, out.overlap.data_row_map);
    const Matrix oracle = CentralizedU(h_t, h_d);
    Matrix diff = testing::AlignColumnSigns(out.representation.matrix, oracle);
    diff -= oracle;
    EXPECT_LT(numerics::FrobeniusNorm(diff), 1e-8) << "schedule " << schedule;
    EXPECT_EQ(bus.pending(), 0u);
  }
}

TEST(FrlProtocolTest, InterleavingDoesNotChangeResult) {
  ProtocolFixture fx;
  Matrix reference;
  for (std::uint64_t schedule : {0, 1, 2, 5, 8}) {
    for (FrlMethod method : {FrlMethod::kFedSvd, FrlMethod::kVFedPca}) {
      MessageBus bus;
      FrlOptions options;
      options.method = method;
      options.schedule_seed = schedule;
      const auto out = RunFederatedRepresentation(bus, {"task", &fx.task}, {"data", &fx.data},
                                                  options);
      if (method == FrlMethod::kFedSvd && schedule == 0) reference = out.representation.matrix;
      if (method == FrlMethod::kFedSvd) EXPECT_EQ(out.representation.matrix, reference);
    }
  }
}

TEST(FrlProtocolTest, VFedPcaOverBusMatchesDirectComposition) {
  ProtocolFixture fx;
  MessageBus bus;
  FrlOptions options;
  options.method = FrlMethod::kVFedPca;
  options.vfedpca.seed = 4;
  options.vfedpca.iter_num = 25;
  options.vfedpca.period_num = 10;
  const auto out =
      RunFederatedRepresentation(bus, {"task", &fx.task}, {"data", &fx.data}, options);
  const Matrix h_t = numerics::SelectRows(fx.task_values, out.overlap.task_row_map);
  const Matrix h_d = numerics::SelectRows(fx.data_values, out.overlap.data_row_map);
  // Rounds of 10, 10 and 5 iterations, re-synced from the aggregate.
  Vector init = VFedPcaInit(30, 4);
  Vector u;
  for (int iters : {10, 10, 5}) {
    std::vector<EigenShare> shares{VFedPcaLocal(h_t, iters, init), VFedPcaLocal(h_d, iters, init)};
    AlignShareSigns(shares);
    u = VFedPcaAggregate(shares).u;
    init = u;
  }
  const Matrix expected = VFedPcaReconstruct(h_t, u);
  EXPECT_EQ(out.representation.matrix, expected);
  EXPECT_EQ(out.representation.width(), 4u);
  EXPECT_EQ(orchestrator::SessionsOf(bus.trace(), "vfedpca").size(), 1u);
}

TEST(FrlProtocolTest, EmptyOverlapIsRejected) {
  const auto task = MakeTable(Ids("a", 0, 5), RandomGaussian(5, 2, 1));
  const auto data = MakeTable(Ids("b", 0, 5), RandomGaussian(5, 2, 2));
  MessageBus bus;
  try {
    RunFederatedRepresentation(bus, {"task", &task}, {"data", &data}, {});
    FAIL() << "expected throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    EXPECT_NE(std::string(e.what()).find("overlap"), std::string::npos);
  }
}

TEST(FrlProtocolTest, TraceCarriesNoRawData) {
  ProtocolFixture fx;
  for (FrlMethod method : {FrlMethod::kFedSvd, FrlMethod::kVFedPca}) {
    MessageBus bus;
    FrlOptions options;
    options.method = method;
    const auto out =
        RunFederatedRepresentation(bus, {"task", &fx.task}, {"data", &fx.data}, options);
    const Matrix h_t = numerics::SelectRows(fx.task_values, out.overlap.task_row_map);
    const Matrix h_d = numerics::SelectRows(fx.data_values, out.overlap.data_row_map);
    const std::set<std::string> raw{
        orchestrator::PayloadChecksum(h_t), orchestrator::PayloadChecksum(h_d),
        orchestrator::PayloadChecksum(fx.task_values), orchestrator::PayloadChecksum(fx.data_values)};
    const std::set<std::string> task_may_receive{"psi.intersection", "fedsvd.mask_a",
                                                 "fedsvd.mask_b",    "fedsvd.u_hat",
                                                 "vfedpca.sync",     "vfedpca.federated"};
    const std::set<std::string> server_may_receive{"psi.digests", "fedsvd.masked",
                                                   "vfedpca.share"};
    for (const auto& entry : bus.trace()) {
      EXPECT_FALSE(raw.contains(entry.checksum)) << entry.kind;
      if (entry.to == "task") {
        EXPECT_TRUE(task_may_receive.contains(entry.kind)) << entry.kind;
        EXPECT_NE(entry.from, "data");
      }
      if (entry.to == kServerName) {
        EXPECT_TRUE(server_may_receive.contains(entry.kind)) << entry.kind;
      }
    }
  }
}

}  // namespace
}  // namespace vfkt::frl
