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

#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "vfkt/data/types.h"
#include "vfkt/downstream/classifier.h"
#include "vfkt/frl/protocol.h"
#include "vfkt/lkt/transfer.h"
#include "vfkt/numerics/linalg.h"
#include "vfkt/numerics/random.h"
#include "vfkt/orchestrator/message_bus.h"

namespace {

using vfkt::numerics::Matrix;

vfkt::data::FeatureMatrix Table(const Matrix& values, const std::string& prefix) {
  std::vector<std::string> ids;
  std::vector<std::string> cols;
  for (std::size_t i = 0; i < values.rows(); ++i) ids.push_back("s" + std::to_string(i));
  for (std::size_t j = 0; j < values.cols(); ++j) cols.push_back(prefix + std::to_string(j));
  return vfkt::data::FeatureMatrix(vfkt::data::ToSampleIds(ids), cols, values);
}

void BM_Svd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  vfkt::numerics::Rng rng(1);
  const Matrix m = rng.NormalMatrix(n, 32);
  for (auto _ : state) benchmark::DoNotOptimize(vfkt::numerics::Svd(m));
}
BENCHMARK(BM_Svd)->Arg(250)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

// Full PSI + representation protocol for one task/data pair over the bus.
void RunFrl(benchmark::State& state, vfkt::frl::FrlMethod method) {
  const auto n = static_cast<std::size_t>(state.range(0));
  vfkt::numerics::Rng rng(2);
  const auto task = Table(rng.NormalMatrix(n, 8), "t");
  const auto hospital = Table(rng.NormalMatrix(n, 8), "h");
  vfkt::frl::FrlOptions options;
  options.method = method;
  options.vfedpca.iter_num = 50;
  for (auto _ : state) {
    vfkt::orchestrator::MessageBus bus;
    benchmark::DoNotOptimize(
        vfkt::frl::RunFederatedRepresentation(bus, {"task", &task}, {"h", &hospital}, options));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_FedSvd(benchmark::State& state) { RunFrl(state, vfkt::frl::FrlMethod::kFedSvd); }
BENCHMARK(BM_FedSvd)->Arg(250)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_VFedPca(benchmark::State& state) { RunFrl(state, vfkt::frl::FrlMethod::kVFedPca); }
BENCHMARK(BM_VFedPca)->Arg(250)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

// One epoch of pair training over the non-overlapping rows.
void BM_LktEpoch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  vfkt::numerics::Rng rng(3);
  const auto nl = Table(rng.NormalMatrix(n, 8), "t");
  const Matrix ol = rng.NormalMatrix(1000, 8);
  const Matrix h_fed = rng.NormalMatrix(1000, 16);
  vfkt::lkt::LktConfig config;
  config.epochs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vfkt::lkt::TrainLkt(nl, ol, h_fed, config, 4, "h"));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_LktEpoch)->Arg(1000)->Arg(3000)->Unit(benchmark::kMillisecond);

void BM_ClassifierTrain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  vfkt::numerics::Rng rng(4);
  const Matrix x = rng.NormalMatrix(n, 24);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = x(i, 0) > 0.0 ? 1 : 0;
  vfkt::downstream::ClassifierOptions options;
  options.epochs = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vfkt::downstream::TrainClassifier(
        x, labels, 2, vfkt::downstream::ClassifierKind::kMlp, 5, options));
  }
}
BENCHMARK(BM_ClassifierTrain)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
