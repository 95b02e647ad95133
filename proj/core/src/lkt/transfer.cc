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

#include "vfkt/lkt/transfer.h"

#include <algorithm>
#include <cmath>

#include "vfkt/error.h"
#include "vfkt/numerics/random.h"

namespace vfkt::lkt {

using numerics::DeriveSeed;

namespace {

// Splits a permutation into batches of batch_size; a trailing batch with a
// single row joins the previous batch so every batch has at least two rows.
std::vector<std::vector<std::size_t>> MakeBatches(const std::vector<std::size_t>& perm,
                                                  std::size_t batch_size) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < perm.size(); start += batch_size) {
    const std::size_t end = std::min(perm.size(), start + batch_size);
    out.emplace_back(perm.begin() + static_cast<std::ptrdiff_t>(start),
                     perm.begin() + static_cast<std::ptrdiff_t>(end));
  }
  if (out.size() >= 2 && out.back().size() < 2) {
    out[out.size() - 2].insert(out[out.size() - 2].end(), out.back().begin(), out.back().end());
    out.pop_back();
  }
  return out;
}

void CheckColumns(const LktModel& model, const data::FeatureMatrix& x) {
  VFKT_ENFORCE(model.input_columns == x.cols(), ErrorCode::kSchemaMismatch,
               "model for '{}' was trained on {} columns; the given table has {} columns with a "
               "different schema",
               model.hospital, model.input_columns.size(), x.num_cols());
}

}  // namespace

TrainedPair TrainLkt(const data::FeatureMatrix& non_overlap, const Matrix& overlap,
                     const Matrix& h_fed, const LktConfig& config, std::uint64_t seed,
                     std::string hospital) {
  config.Validate();
  const std::size_t n = non_overlap.num_rows();
  VFKT_ENFORCE(n >= 2, ErrorCode::kInvalidArgument,
               "lkt: at least 2 non-overlapping rows are needed, got {}", n);
  const bool use_overlap = config.reconstruction == ReconstructionSource::kOverlap;
  if (use_overlap) {
    VFKT_ENFORCE(overlap.rows() >= 1, ErrorCode::kInvalidArgument,
                 "lkt: reconstruction source 'overlap' needs overlapping rows");
    VFKT_ENFORCE(overlap.cols() == non_overlap.num_cols(), ErrorCode::kSchemaMismatch,
                 "lkt: overlapping rows have {} columns but non-overlapping rows have {}; use "
                 "reconstruction source 'non_overlap' for heterogeneous features",
                 overlap.cols(), non_overlap.num_cols());
  }

  TrainedPair out{CreateLktModel(non_overlap.cols(), h_fed.cols(), config, seed), {}};
  out.model.hospital = std::move(hospital);
  LktModel& model = out.model;

  numerics::AdamOptions opts;
  opts.learning_rate = config.learning_rate;
  numerics::AdamOptions mine_opts;
  mine_opts.learning_rate = config.mine_rate();

  numerics::Rng rng(DeriveSeed(seed, "lkt.batches"));
  const Matrix& x_all = non_overlap.values();
  std::uint64_t step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto batches = MakeBatches(rng.Permutation(n), config.batch_size);
    std::vector<std::size_t> overlap_perm;
    if (use_overlap) overlap_perm = rng.Permutation(overlap.rows());
    double sum_total = 0.0;
    double sum_recons = 0.0;
    double sum_mi = 0.0;
    std::size_t cursor = 0;
    for (const auto& rows : batches) {
      const Matrix x = numerics::SelectRows(x_all, rows);
      Matrix x_recon;
      if (use_overlap) {
        // Cycles through the shuffled overlap rows, repeating some when the
        // overlap set is smaller than the batch.
        std::vector<std::size_t> recon_rows(rows.size());
        for (std::size_t j = 0; j < rows.size(); ++j) {
          recon_rows[j] = overlap_perm[cursor];
          cursor = (cursor + 1) % overlap.rows();
        }
        x_recon = numerics::SelectRows(overlap, recon_rows);
      } else {
        x_recon = x;
      }
      const MinePairing pairing = PairRows(x, DeriveSeed(seed, "lkt.pairing", step++));
      LktGradients grads;
      const LossBreakdown loss = LktLoss(model, x, x_recon, h_fed, pairing, config.recon_weight,
                                         config.mi_weight, &grads);
      VFKT_ENFORCE(std::isfinite(loss.total), ErrorCode::kDiverged,
                   "lkt training diverged for '{}' (seed {}, epoch {})", model.hospital, seed,
                   epoch);
      sum_total += loss.total;
      sum_recons += loss.recons;
      sum_mi += loss.mi;
      AdamStep(model.encoder, grads.encoder, opts);
      AdamStep(model.decoder, grads.decoder, opts);
      ++model.phi_step;
      numerics::AdamUpdate(model.phi.data(), grads.phi.data(), model.phi_moments, model.phi_step,
                           opts);
      AdamStep(model.mine, grads.mine, mine_opts);
    }
    const double count = static_cast<double>(batches.size());
    out.history.total.push_back(sum_total / count);
    out.history.recons.push_back(sum_recons / count);
    out.history.mi.push_back(sum_mi / count);
  }
  model.Validate();
  return out;
}

double RedundancyStatistic(std::span<const LktModel> models, const Matrix& x) {
  if (models.size() < 2) return 0.0;
  std::vector<Matrix> enc;
  for (const auto& m : models) enc.push_back(Encode(m, x));
  double acc = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < enc.size(); ++i) {
    for (std::size_t j = i + 1; j < enc.size(); ++j) {
      VFKT_ENFORCE(enc[i].cols() == enc[j].cols(), ErrorCode::kDimensionMismatch,
                   "redundancy: latent widths {} and {} differ", enc[i].cols(), enc[j].cols());
      double rows = 0.0;
      for (std::size_t b = 0; b < x.rows(); ++b) {
        rows += std::abs(Cosine(enc[i].row(b), enc[j].row(b)));
      }
      acc += rows / static_cast<double>(x.rows());
      ++pairs;
    }
  }
  return acc / static_cast<double>(pairs);
}

FineTuneResult FineTuneContrastive(std::span<LktModel> models, const data::FeatureMatrix& non_overlap,
                                   std::span<const Matrix> h_feds, const LktConfig& config,
                                   std::uint64_t seed) {
  config.Validate();
  const std::size_t n_models = models.size();
  VFKT_ENFORCE(n_models >= 1, ErrorCode::kInvalidArgument, "fine-tuning needs at least one model");
  VFKT_ENFORCE(h_feds.size() == n_models, ErrorCode::kInvalidArgument,
               "fine-tuning: {} models but {} federated representations", n_models, h_feds.size());
  for (const auto& m : models) {
    CheckColumns(m, non_overlap);
    VFKT_ENFORCE(m.latent_width() == models[0].latent_width(), ErrorCode::kSchemaMismatch,
                 "fine-tuning: latent widths differ ({} vs {})", m.latent_width(),
                 models[0].latent_width());
  }
  const Matrix& x_all = non_overlap.values();
  FineTuneResult result;
  result.redundancy_before = RedundancyStatistic(models, x_all);

  // Targets come from the models as they were before fine-tuning.
  std::vector<Matrix> targets;
  for (std::size_t k = 0; k < n_models; ++k) {
    targets.push_back(CrossAttention(Encode(models[k], x_all), h_feds[k], models[k].phi));
  }

  numerics::AdamOptions opts;
  opts.learning_rate = config.learning_rate;
  const std::size_t n = x_all.rows();
  result.loss.assign(static_cast<std::size_t>(config.finetune_epochs), 0.0);
  std::vector<std::size_t> batch_counts(result.loss.size(), 0);
  for (std::size_t i = 0; i < n_models; ++i) {
    models[i].encoder.ResetOptimizer();
    numerics::Rng rng(DeriveSeed(seed, "lkt.finetune", i));
    for (int epoch = 0; epoch < config.finetune_epochs; ++epoch) {
      for (const auto& rows : MakeBatches(rng.Permutation(n), config.batch_size)) {
        const Matrix x = numerics::SelectRows(x_all, rows);
        std::vector<Matrix> enc(n_models);
        std::vector<Matrix> tgt(n_models);
        numerics::ForwardCache cache;
        for (std::size_t k = 0; k < n_models; ++k) {
          if (k == i) {
            enc[k] = Forward(models[k].encoder, x, &cache);
          } else if (config.contrastive == ContrastiveForm::kLiteral) {
            enc[k] = Forward(models[k].encoder, x);
          } else {
            enc[k] = Matrix(x.rows(), models[k].latent_width());
          }
          tgt[k] = numerics::SelectRows(targets[k], rows);
        }
        Matrix grad;
        const double loss = ContrastiveLoss(enc, tgt, i, config.tau, config.contrastive, &grad);
        VFKT_ENFORCE(std::isfinite(loss), ErrorCode::kDiverged,
                     "contrastive fine-tuning diverged for '{}' (seed {}, epoch {})",
                     models[i].hospital, seed, epoch);
        result.loss[static_cast<std::size_t>(epoch)] += loss;
        ++batch_counts[static_cast<std::size_t>(epoch)];
        AdamStep(models[i].encoder, Backward(models[i].encoder, cache, grad), opts);
      }
    }
  }
  for (std::size_t e = 0; e < result.loss.size(); ++e) {
    if (batch_counts[e] > 0) result.loss[e] /= static_cast<double>(batch_counts[e]);
  }
  result.redundancy_after = RedundancyStatistic(models, x_all);
  return result;
}

AugmentedFeatures Augment(std::span<const LktModel> models, const data::FeatureMatrix& x) {
  std::vector<std::string> cols = x.cols();
  std::vector<Matrix> blocks{x.values()};
  std::vector<std::string> provenance;
  for (const auto& m : models) {
    CheckColumns(m, x);
    blocks.push_back(Encode(m, x.values()));
    for (std::size_t j = 0; j < m.latent_width(); ++j) {
      cols.push_back(m.hospital + ".enc" + std::to_string(j));
    }
    provenance.push_back(m.hospital);
  }
  return AugmentedFeatures{data::FeatureMatrix(x.rows(), std::move(cols), numerics::HConcat(blocks)),
                           std::move(provenance)};
}

AugmentedFeatures ApplyToNewSamples(std::span<const LktModel> models,
                                    const data::FeatureMatrix& x_new) {
  return Augment(models, x_new);
}

}  // namespace vfkt::lkt
