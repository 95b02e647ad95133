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

#include "vfkt/lkt/model.h"

#include <algorithm>
#include <cmath>

#include "vfkt/error.h"
#include "vfkt/numerics/random.h"

namespace vfkt::lkt {

using numerics::Activation;
using numerics::DeriveSeed;
using numerics::DenseNet;

std::string_view ReconstructionSourceName(ReconstructionSource source) {
  return source == ReconstructionSource::kOverlap ? "overlap" : "non_overlap";
}

ReconstructionSource ParseReconstructionSource(std::string_view name) {
  if (name == "overlap") return ReconstructionSource::kOverlap;
  if (name == "non_overlap") return ReconstructionSource::kNonOverlap;
  Throw(ErrorCode::kParse, "unknown reconstruction source '{}' (expected overlap|non_overlap)",
        name);
}

std::string_view ContrastiveFormName(ContrastiveForm form) {
  return form == ContrastiveForm::kAnchored ? "anchored" : "literal";
}

ContrastiveForm ParseContrastiveForm(std::string_view name) {
  if (name == "anchored") return ContrastiveForm::kAnchored;
  if (name == "literal") return ContrastiveForm::kLiteral;
  Throw(ErrorCode::kParse, "unknown contrastive form '{}' (expected anchored|literal)", name);
}

void LktConfig::Validate() const {
  VFKT_ENFORCE(!hidden_widths.empty(), ErrorCode::kInvalidArgument,
               "lkt.hidden_widths must not be empty");
  for (std::size_t w : hidden_widths) {
    VFKT_ENFORCE(w >= 1, ErrorCode::kInvalidArgument, "lkt.hidden_widths entries must be >= 1");
  }
  for (std::size_t w : mine_hidden_widths) {
    VFKT_ENFORCE(w >= 1, ErrorCode::kInvalidArgument,
                 "lkt.mine_hidden_widths entries must be >= 1");
  }
  VFKT_ENFORCE(recon_weight >= 0.0 && std::isfinite(recon_weight), ErrorCode::kInvalidArgument,
               "lkt reconstruction weight must be finite and >= 0, got {}", recon_weight);
  VFKT_ENFORCE(mi_weight >= 0.0 && std::isfinite(mi_weight), ErrorCode::kInvalidArgument,
               "lkt mutual information weight must be finite and >= 0, got {}", mi_weight);
  VFKT_ENFORCE(tau > 0.0 && std::isfinite(tau), ErrorCode::kInvalidArgument,
               "lkt.tau must be > 0, got {}", tau);
  VFKT_ENFORCE(learning_rate >= 0.0 && mine_rate() >= 0.0, ErrorCode::kInvalidArgument,
               "lkt learning rates must be >= 0");
  VFKT_ENFORCE(batch_size >= 2, ErrorCode::kInvalidArgument,
               "lkt.batch_size must be >= 2, got {}", batch_size);
  VFKT_ENFORCE(epochs >= 0 && finetune_epochs >= 0, ErrorCode::kInvalidArgument,
               "lkt epoch counts must be >= 0");
}

void LktModel::Validate() const {
  encoder.Validate();
  decoder.Validate();
  mine.Validate();
  VFKT_ENFORCE(decoder.input_width() == encoder.output_width(), ErrorCode::kSchemaMismatch,
               "lkt model: decoder expects {} inputs, encoder emits {}", decoder.input_width(),
               encoder.output_width());
  VFKT_ENFORCE(decoder.output_width() == encoder.input_width(), ErrorCode::kSchemaMismatch,
               "lkt model: decoder emits {} columns, encoder reads {}", decoder.output_width(),
               encoder.input_width());
  VFKT_ENFORCE(phi.cols() == encoder.output_width(), ErrorCode::kSchemaMismatch,
               "lkt model: phi has {} columns, latent width is {}", phi.cols(),
               encoder.output_width());
  VFKT_ENFORCE(mine.input_width() == 2 * encoder.output_width() && mine.output_width() == 1,
               ErrorCode::kSchemaMismatch, "lkt model: statistics network shape mismatch");
  VFKT_ENFORCE(input_columns.size() == encoder.input_width(), ErrorCode::kSchemaMismatch,
               "lkt model: {} input columns for an encoder of width {}", input_columns.size(),
               encoder.input_width());
  VFKT_ENFORCE(phi.AllFinite(), ErrorCode::kDiverged, "lkt model: phi is not finite");
}

LktModel CreateLktModel(std::vector<std::string> input_columns, std::size_t fed_width,
                        const LktConfig& config, std::uint64_t seed) {
  config.Validate();
  const std::size_t in = input_columns.size();
  VFKT_ENFORCE(in >= 1 && fed_width >= 1, ErrorCode::kInvalidArgument,
               "lkt model: widths must be >= 1 (input {}, federated {})", in, fed_width);
  const std::size_t d = config.latent_width == 0 ? in : config.latent_width;

  std::vector<std::size_t> enc_widths{in};
  std::vector<Activation> enc_acts;
  for (std::size_t h : config.hidden_widths) {
    enc_widths.push_back(h);
    enc_acts.push_back(Activation::kSigmoid);
  }
  enc_widths.push_back(d);
  enc_acts.push_back(Activation::kLinear);

  std::vector<std::size_t> dec_widths{d};
  for (auto it = config.hidden_widths.rbegin(); it != config.hidden_widths.rend(); ++it) {
    dec_widths.push_back(*it);
  }
  dec_widths.push_back(in);

  LktModel model;
  model.encoder = DenseNet::Create(enc_widths, enc_acts, DeriveSeed(seed, "lkt.encoder"));
  model.decoder = DenseNet::Create(dec_widths, enc_acts, DeriveSeed(seed, "lkt.decoder"));
  numerics::Rng rng(DeriveSeed(seed, "lkt.phi"));
  model.phi = rng.NormalMatrix(fed_width, d, 1.0 / std::sqrt(static_cast<double>(fed_width)));
  model.phi_moments.Resize(model.phi.size());
  model.mine = CreateMineNet(d, config.mine_hidden_widths, DeriveSeed(seed, "lkt.mine"));
  model.input_columns = std::move(input_columns);
  model.Validate();
  return model;
}

Matrix Encode(const LktModel& model, const Matrix& x) {
  VFKT_ENFORCE(x.cols() == model.input_width(), ErrorCode::kSchemaMismatch,
               "encoder expects {} columns, got {}", model.input_width(), x.cols());
  return Forward(model.encoder, x);
}

LossBreakdown LktLoss(const LktModel& model, const Matrix& x_nl, const Matrix& x_recon,
                      const Matrix& h_fed, const MinePairing& pairing, double recon_weight,
                      double mi_weight, LktGradients* grads) {
  VFKT_ENFORCE(x_nl.cols() == model.input_width() && x_recon.cols() == model.input_width(),
               ErrorCode::kSchemaMismatch,
               "lkt loss: encoder expects {} columns, got {} (transfer) and {} (reconstruction)",
               model.input_width(), x_nl.cols(), x_recon.cols());

  // Reconstruction path.
  numerics::ForwardCache enc_recon_cache;
  numerics::ForwardCache dec_cache;
  const Matrix latent_recon = Forward(model.encoder, x_recon, &enc_recon_cache);
  Matrix diff = Forward(model.decoder, latent_recon, &dec_cache);
  diff -= x_recon;
  const double count = static_cast<double>(diff.size());
  double sq = 0.0;
  for (double v : diff.data()) sq += v * v;

  // Transfer path.
  numerics::ForwardCache enc_nl_cache;
  AttentionCache attn_cache;
  const Matrix e = Forward(model.encoder, x_nl, &enc_nl_cache);
  const Matrix z = CrossAttention(e, h_fed, model.phi, &attn_cache);
  const MineEvaluation eval = EvaluateMine(model.mine, e, z, pairing);

  LossBreakdown out;
  out.recons = sq / count;
  out.mi = eval.bound;
  out.total = recon_weight * out.recons - mi_weight * out.mi;
  if (grads == nullptr) return out;

  Matrix grad_r = diff;
  grad_r *= recon_weight * 2.0 / count;
  grads->decoder = Backward(model.decoder, dec_cache, grad_r);
  grads->encoder = Backward(model.encoder, enc_recon_cache, grads->decoder.input);

  MineGradients mg = MineBackward(model.mine, eval, pairing);
  grads->mine = std::move(mg.net);
  if (mi_weight != 0.0) {
    // dL/dp and dL/dz are mi_weight times d(-MI)/dp and d(-MI)/dq.
    mg.p *= mi_weight;
    mg.q *= mi_weight;
    AttentionGradients ag = CrossAttentionBackward(attn_cache, h_fed, mg.q);
    mg.p += ag.query;
    grads->encoder += Backward(model.encoder, enc_nl_cache, mg.p);
    grads->phi = std::move(ag.phi);
  } else {
    grads->phi = Matrix(model.phi.rows(), model.phi.cols());
  }
  return out;
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  const double na = numerics::Norm2(a);
  const double nb = numerics::Norm2(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return numerics::Dot(a, b) / (na * nb);
}

double MeanRowCosine(const Matrix& a, const Matrix& b) {
  VFKT_ENFORCE(a.rows() == b.rows() && a.cols() == b.cols() && a.rows() >= 1,
               ErrorCode::kDimensionMismatch, "cosine: shapes {}x{} and {}x{}", a.rows(),
               a.cols(), b.rows(), b.cols());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) acc += Cosine(a.row(i), b.row(i));
  return acc / static_cast<double>(a.rows());
}

namespace {

// Adds scale * d cos(e_b, z_b) / d e_b for every row b into grad.
void AccumulateCosineGrad(const Matrix& e, const Matrix& z, double scale, Matrix& grad) {
  for (std::size_t b = 0; b < e.rows(); ++b) {
    const auto er = e.row(b);
    const auto zr = z.row(b);
    const double ne = numerics::Norm2(er);
    const double nz = numerics::Norm2(zr);
    if (ne == 0.0 || nz == 0.0) continue;
    const double cos = numerics::Dot(er, zr) / (ne * nz);
    auto gr = grad.row(b);
    for (std::size_t j = 0; j < er.size(); ++j) {
      gr[j] += scale * (zr[j] / (ne * nz) - cos * er[j] / (ne * ne));
    }
  }
}

}  // namespace

double ContrastiveLoss(std::span<const Matrix> encodings, std::span<const Matrix> targets,
                       std::size_t index, double tau, ContrastiveForm form, Matrix* grad) {
  const std::size_t n = encodings.size();
  VFKT_ENFORCE(n >= 1 && targets.size() == n, ErrorCode::kInvalidArgument,
               "contrastive loss: {} encodings but {} targets", n, targets.size());
  VFKT_ENFORCE(index < n, ErrorCode::kInvalidArgument, "contrastive loss: index {} of {}", index,
               n);
  VFKT_ENFORCE(tau > 0.0, ErrorCode::kInvalidArgument, "contrastive loss: tau must be > 0");
  const Matrix& e = encodings[index];
  std::vector<double> logits(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix& lhs = form == ContrastiveForm::kAnchored ? e : encodings[k];
    logits[k] = MeanRowCosine(lhs, targets[k]) / tau;
  }
  if (n == 1) {
    // -log(exp(a) / exp(a)) is exactly zero, with zero gradient.
    if (grad != nullptr) *grad = Matrix(e.rows(), e.cols());
    return 0.0;
  }
  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double l : logits) z += std::exp(l - m);
  const double loss = -(logits[index] - m) + std::log(z);
  if (grad != nullptr) {
    *grad = Matrix(e.rows(), e.cols());
    const double inv = 1.0 / (tau * static_cast<double>(e.rows()));
    for (std::size_t k = 0; k < n; ++k) {
      if (form == ContrastiveForm::kLiteral && k != index) continue;
      const double weight = std::exp(logits[k] - m) / z - (k == index ? 1.0 : 0.0);
      AccumulateCosineGrad(e, targets[k], weight * inv, *grad);
    }
  }
  return loss;
}

}  // namespace vfkt::lkt
