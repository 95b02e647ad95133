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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfkt/lkt/attention.h"
#include "vfkt/lkt/mine.h"
#include "vfkt/numerics/dense_net.h"

namespace vfkt::lkt {

// What the autoencoder reconstructs. kOverlap trains on the task party's
// overlapping rows (same-domain data); kNonOverlap trains on the rows being
// augmented (the two row sets have different columns across domains).
enum class ReconstructionSource { kOverlap, kNonOverlap };

std::string_view ReconstructionSourceName(ReconstructionSource source);
ReconstructionSource ParseReconstructionSource(std::string_view name);

// kAnchored contrasts Enc_i(H) against every pair's Z_k, so the other pairs'
// targets act as negatives. kLiteral uses each pair's own (Enc_k(H), Z_k)
// score in the denominator.
enum class ContrastiveForm { kAnchored, kLiteral };

std::string_view ContrastiveFormName(ContrastiveForm form);
ContrastiveForm ParseContrastiveForm(std::string_view name);

struct LktConfig {
  // Encoder output width; 0 uses the width of the rows being augmented.
  std::size_t latent_width = 0;
  std::vector<std::size_t> hidden_widths{32, 16};
  std::vector<std::size_t> mine_hidden_widths{64, 64};
  // L = recon_weight * L_recons - mi_weight * L_mi. Set through
  // SetLambda() or SetBetas().
  double recon_weight = 1.0;
  double mi_weight = 0.1;
  double tau = 0.5;
  double learning_rate = 1e-3;
  // Unset follows learning_rate.
  std::optional<double> mine_learning_rate;
  std::size_t batch_size = 100;
  int epochs = 30;
  int finetune_epochs = 10;
  ReconstructionSource reconstruction = ReconstructionSource::kOverlap;
  ContrastiveForm contrastive = ContrastiveForm::kAnchored;

  void SetLambda(double lambda) {
    recon_weight = 1.0;
    mi_weight = lambda;
  }
  void SetBetas(double beta0, double beta1) {
    recon_weight = beta0;
    mi_weight = beta1;
  }
  double mine_rate() const { return mine_learning_rate.value_or(learning_rate); }
  // Throws Error(kInvalidArgument) naming the offending field.
  void Validate() const;
};

// One task/data-hospital pair model.
struct LktModel {
  numerics::DenseNet encoder;
  numerics::DenseNet decoder;
  Matrix phi;  // |X_fed| x d
  numerics::AdamMoments phi_moments;
  long phi_step = 0;
  numerics::DenseNet mine;
  std::string hospital;                    // data hospital this pair was trained with
  std::vector<std::string> input_columns;  // schema of the rows being augmented

  std::size_t latent_width() const { return encoder.output_width(); }
  std::size_t input_width() const { return encoder.input_width(); }
  std::size_t fed_width() const { return phi.rows(); }
  // Throws unless encoder output width, phi columns and mine input agree.
  void Validate() const;
};

// Initializes a pair model. Both reconstruction sources pass through the
// encoder, so the decoder always emits input_columns.size() columns.
LktModel CreateLktModel(std::vector<std::string> input_columns, std::size_t fed_width,
                        const LktConfig& config, std::uint64_t seed);

Matrix Encode(const LktModel& model, const Matrix& x);

struct LossBreakdown {
  double total = 0.0;
  double recons = 0.0;
  double mi = 0.0;
};

struct LktGradients {
  numerics::DenseGradients encoder;
  numerics::DenseGradients decoder;
  Matrix phi;
  numerics::DenseGradients mine;  // of -L_mi
};

// Full training objective on one batch:
//   L = recon_weight * mean((Dec(Enc(x_recon)) - x_recon)^2)
//       - mi_weight * MI(Enc(x_nl), Z),   Z = attention(Enc(x_nl), h_fed, phi)
// `pairing` fixes the marginal samples of the MI estimate. When grads is
// non-null, fills gradients of L for encoder, decoder and phi, and of -L_mi
// for the statistics network.
LossBreakdown LktLoss(const LktModel& model, const Matrix& x_nl, const Matrix& x_recon,
                      const Matrix& h_fed, const MinePairing& pairing, double recon_weight,
                      double mi_weight, LktGradients* grads = nullptr);

// Cosine similarity of two rows; 0 when either is the zero vector.
double Cosine(std::span<const double> a, std::span<const double> b);

// Mean over rows of the row-wise cosine similarity.
double MeanRowCosine(const Matrix& a, const Matrix& b);

// Contrastive loss for pair `index`:
//   anchored: -log(exp(D(E, Z_i)/tau) / sum_k exp(D(E, Z_k)/tau))
//   literal:  -log(exp(D(E, Z_i)/tau) / sum_k exp(D(E_k, Z_k)/tau))
// where D is MeanRowCosine, E = encodings[index]. When grad is non-null,
// writes dL/dE for E = encodings[index] (other encodings are constants).
double ContrastiveLoss(std::span<const Matrix> encodings, std::span<const Matrix> targets,
                       std::size_t index, double tau, ContrastiveForm form,
                       Matrix* grad = nullptr);

}  // namespace vfkt::lkt
