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

#include "vfkt/orchestrator/synthetic.h"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"
#include "vfkt/error.h"
#include "vfkt/numerics/random.h"

namespace vfkt::orchestrator {

using numerics::Matrix;

std::size_t SyntheticSpec::latent_width() const {
  return shared_latent + task_latent + data_latent * data_features.size();
}

void SyntheticSpec::Validate() const {
  VFKT_ENFORCE(task_rows >= 2, ErrorCode::kInvalidArgument, "task_rows must be >= 2");
  VFKT_ENFORCE(overlap_rows <= task_rows, ErrorCode::kInvalidArgument,
               "overlap_rows ({}) exceeds task_rows ({})", overlap_rows, task_rows);
  VFKT_ENFORCE(task_features >= 1, ErrorCode::kInvalidArgument, "task_features must be >= 1");
  for (std::size_t w : data_features) {
    VFKT_ENFORCE(w >= 1, ErrorCode::kInvalidArgument, "data_features entries must be >= 1");
  }
  VFKT_ENFORCE(latent_width() >= 1, ErrorCode::kInvalidArgument, "latent width must be >= 1");
  VFKT_ENFORCE(noise >= 0 && std::isfinite(noise), ErrorCode::kInvalidArgument,
               "noise must be a finite non-negative number");
  VFKT_ENFORCE(num_classes >= 2, ErrorCode::kInvalidArgument, "num_classes must be >= 2");
  VFKT_ENFORCE(label_weights.empty() || label_weights.size() == latent_width(),
               ErrorCode::kInvalidArgument, "label_weights needs {} entries, got {}",
               latent_width(), label_weights.size());
  if (label_weights.empty()) {
    VFKT_ENFORCE(shared_latent >= 1, ErrorCode::kInvalidArgument,
                 "default labels need at least one shared latent coordinate");
  }
}

namespace {

// Observations of the latent coordinates listed in `visible`; the first
// `shared` of them are scaled by `signal`.
Matrix Observe(const Matrix& z, const std::vector<std::size_t>& rows,
               const std::vector<std::size_t>& visible, std::size_t shared, double signal,
               std::size_t width, double noise, numerics::Rng& rng) {
  Matrix loading = rng.NormalMatrix(visible.size(), width, 1.0 / std::sqrt(visible.size()));
  for (std::size_t i = 0; i < shared; ++i) {
    for (std::size_t j = 0; j < width; ++j) loading(i, j) *= signal;
  }
  Matrix out(rows.size(), width);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < width; ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < visible.size(); ++i) v += z(rows[r], visible[i]) * loading(i, j);
      out(r, j) = v;
    }
  }
  // Noise drawn after the loadings so that noise = 0 changes nothing else.
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < width; ++j) out(r, j) += noise * rng.Normal();
  }
  return out;
}

std::vector<std::size_t> Range(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> v;
  for (std::size_t i = begin; i < end; ++i) v.push_back(i);
  return v;
}

std::vector<std::string> Names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < n; ++j) out.push_back(fmt::format("{}{}", prefix, j));
  return out;
}

}  // namespace

SyntheticData GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  const std::size_t hospitals = spec.data_features.size();
  const std::size_t total = spec.task_rows + hospitals * spec.data_only_rows;
  const std::size_t width = spec.latent_width();

  numerics::Rng latent_rng(numerics::DeriveSeed(spec.seed, "synthetic.latent"));
  const Matrix z = latent_rng.NormalMatrix(total, width, 1.0);

  std::vector<data::SampleId> ids;
  for (std::size_t i = 0; i < total; ++i) ids.push_back({fmt::format("s{:06d}", i)});

  // Labels from equal-mass quantiles of the score.
  std::vector<double> weights = spec.label_weights;
  if (weights.empty()) {
    weights.assign(width, 0.0);
    std::fill(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(spec.shared_latent),
              1.0);
  }
  std::vector<double> score(spec.task_rows);
  for (std::size_t r = 0; r < spec.task_rows; ++r) {
    for (std::size_t i = 0; i < width; ++i) score[r] += weights[i] * z(r, i);
  }
  std::vector<double> sorted = score;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  for (int c = 1; c < spec.num_classes; ++c) {
    cuts.push_back(sorted[static_cast<std::size_t>(c) * sorted.size() /
                          static_cast<std::size_t>(spec.num_classes)]);
  }
  std::vector<int> labels(spec.task_rows);
  for (std::size_t r = 0; r < spec.task_rows; ++r) {
    labels[r] = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), score[r]) -
                                 cuts.begin());
  }

  const std::vector<std::size_t> task_rows = Range(0, spec.task_rows);
  std::vector<std::size_t> task_visible = Range(0, spec.shared_latent + spec.task_latent);
  numerics::Rng task_rng(numerics::DeriveSeed(spec.seed, "synthetic.task"));
  const Matrix x_task = Observe(z, task_rows, task_visible, spec.shared_latent, spec.task_signal,
                                spec.task_features, spec.noise, task_rng);
  std::vector<data::SampleId> task_ids(ids.begin(),
                                       ids.begin() + static_cast<std::ptrdiff_t>(spec.task_rows));
  data::Dataset ds{{"task", data::PartyRole::kTask,
                    data::FeatureMatrix(task_ids, Names("t", spec.task_features), x_task),
                    data::LabelVector(task_ids, labels, spec.num_classes)},
                   {},
                   std::nullopt};

  for (std::size_t k = 0; k < hospitals; ++k) {
    std::vector<std::size_t> rows = Range(0, spec.overlap_rows);
    const std::size_t extra = spec.task_rows + k * spec.data_only_rows;
    for (std::size_t r = extra; r < extra + spec.data_only_rows; ++r) rows.push_back(r);
    std::vector<std::size_t> visible = Range(0, spec.shared_latent);
    const std::size_t own = spec.shared_latent + spec.task_latent + k * spec.data_latent;
    for (std::size_t i = own; i < own + spec.data_latent; ++i) visible.push_back(i);
    numerics::Rng rng(numerics::DeriveSeed(spec.seed, "synthetic.hospital", k));
    const Matrix x = Observe(z, rows, visible, spec.shared_latent, spec.data_signal,
                             spec.data_features[k], spec.noise, rng);
    std::vector<data::SampleId> party_ids;
    for (std::size_t r : rows) party_ids.push_back(ids[r]);
    const std::string name = fmt::format("hospital{}", k + 1);
    ds.data_parties.push_back({name, data::PartyRole::kData,
                               data::FeatureMatrix(party_ids,
                                                   Names(name + "_f", spec.data_features[k]), x),
                               std::nullopt});
  }
  ds.Validate();
  return {std::move(ds), z};
}

}  // namespace vfkt::orchestrator
