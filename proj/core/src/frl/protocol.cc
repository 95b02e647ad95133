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

#include "vfkt/frl/protocol.h"

#include <algorithm>
#include <map>
#include <memory>
#include <vector>

#include "vfkt/data/psi.h"
#include "vfkt/error.h"
#include "vfkt/frl/fedsvd.h"
#include "vfkt/frl/vfedpca.h"
#include "vfkt/orchestrator/actor.h"

namespace vfkt::frl {
namespace {

using orchestrator::Actor;
using orchestrator::MessageBus;

// ---------------------------------------------------------------------------
// PSI

class PsiParty : public Actor {
 public:
  PsiParty(std::string name, std::string session, const data::FeatureMatrix& features,
           std::uint64_t salt)
      : Actor(std::move(name)), session_(std::move(session)), features_(features), salt_(salt) {}

  bool Step(MessageBus& bus) override {
    if (!sent_) {
      bus.Send(session_, name(), kServerName, "psi.digests",
               data::HashSampleIds(features_.rows(), salt_));
      sent_ = true;
      return true;
    }
    auto msg = bus.TryReceive(kServerName, name());
    if (!msg) return false;
    VFKT_ENFORCE(msg->kind == "psi.intersection", ErrorCode::kProtocol,
                 "{}: unexpected '{}'", name(), msg->kind);
    rows_ = data::RowsForDigests(features_.rows(), salt_, msg->digests());
    done_ = true;
    return true;
  }
  bool done() const override { return done_; }
  const std::vector<std::size_t>& rows() const { return rows_; }

 private:
  std::string session_;
  const data::FeatureMatrix& features_;
  std::uint64_t salt_;
  bool sent_ = false;
  bool done_ = false;
  std::vector<std::size_t> rows_;
};

class PsiServer : public Actor {
 public:
  PsiServer(std::string session, std::vector<std::string> parties)
      : Actor(kServerName), session_(std::move(session)), parties_(std::move(parties)) {}

  bool Step(MessageBus& bus) override {
    bool progress = false;
    for (const auto& p : parties_) {
      if (digests_.contains(p)) continue;
      if (auto msg = bus.TryReceive(p, name())) {
        VFKT_ENFORCE(msg->kind == "psi.digests", ErrorCode::kProtocol, "server: unexpected '{}'",
                     msg->kind);
        digests_[p] = msg->digests();
        progress = true;
      }
    }
    if (digests_.size() == parties_.size()) {
      std::vector<std::uint64_t> common = digests_.at(parties_.front());
      for (std::size_t k = 1; k < parties_.size(); ++k) {
        common = data::IntersectDigests(std::move(common), digests_.at(parties_[k]));
      }
      for (const auto& p : parties_) bus.Send(session_, name(), p, "psi.intersection", common);
      done_ = true;
      progress = true;
    }
    return progress;
  }
  bool done() const override { return done_; }

 private:
  std::string session_;
  std::vector<std::string> parties_;
  std::map<std::string, std::vector<std::uint64_t>> digests_;
  bool done_ = false;
};

// ---------------------------------------------------------------------------
// FedSVD

class KeygenActor : public Actor {
 public:
  KeygenActor(std::string session, std::vector<std::string> parties, const FedSvdOptions& opts)
      : Actor(kKeygenName), session_(std::move(session)), parties_(std::move(parties)),
        options_(opts) {}

  bool Step(MessageBus& bus) override {
    bool progress = false;
    for (const auto& p : parties_) {
      if (shapes_.contains(p)) continue;
      if (auto msg = bus.TryReceive(p, name())) {
        VFKT_ENFORCE(msg->kind == "fedsvd.shape", ErrorCode::kProtocol,
                     "keygen: unexpected '{}'", msg->kind);
        shapes_[p] = msg->vector();
        progress = true;
      }
    }
    if (shapes_.size() < parties_.size()) return progress;
    const auto overlap = static_cast<std::size_t>(shapes_.at(parties_.front())[0]);
    std::vector<std::size_t> widths;
    for (const auto& p : parties_) {
      VFKT_ENFORCE(static_cast<std::size_t>(shapes_.at(p)[0]) == overlap, ErrorCode::kProtocol,
                   "keygen: parties disagree on the overlap size");
      widths.push_back(static_cast<std::size_t>(shapes_.at(p)[1]));
    }
    const auto masks = frl::FedSvdKeygen(overlap, widths, options_.seed, options_.block_size);
    for (std::size_t k = 0; k < parties_.size(); ++k) {
      bus.Send(session_, name(), parties_[k], "fedsvd.mask_a", masks[k].a);
      bus.Send(session_, name(), parties_[k], "fedsvd.mask_b", masks[k].b_slice);
    }
    done_ = true;
    return true;
  }
  bool done() const override { return done_; }

 private:
  std::string session_;
  std::vector<std::string> parties_;
  FedSvdOptions options_;
  std::map<std::string, std::vector<double>> shapes_;
  bool done_ = false;
};

class FedSvdParty : public Actor {
 public:
  FedSvdParty(std::string name, std::string session, Matrix overlap_rows, bool is_task)
      : Actor(std::move(name)), session_(std::move(session)), h_(std::move(overlap_rows)),
        is_task_(is_task) {}

  bool Step(MessageBus& bus) override {
    if (!shape_sent_) {
      bus.Send(session_, name(), kKeygenName, "fedsvd.shape",
               std::vector<double>{static_cast<double>(h_.rows()), static_cast<double>(h_.cols())});
      shape_sent_ = true;
      return true;
    }
    bool progress = false;
    while (!masks_ready_) {
      auto msg = bus.TryReceive(kKeygenName, name());
      if (!msg) break;
      progress = true;
      if (msg->kind == "fedsvd.mask_a") {
        masks_.a = msg->matrix();
      } else if (msg->kind == "fedsvd.mask_b") {
        masks_.b_slice = msg->matrix();
        masks_ready_ = true;
      } else {
        Throw(ErrorCode::kProtocol, "{}: unexpected '{}'", name(), msg->kind);
      }
    }
    if (masks_ready_ && !masked_sent_) {
      bus.Send(session_, name(), kServerName, "fedsvd.masked", FedSvdMask(h_, masks_));
      masked_sent_ = true;
      if (!is_task_) done_ = true;
      return true;
    }
    if (masked_sent_ && is_task_ && !done_) {
      if (auto msg = bus.TryReceive(kServerName, name())) {
        VFKT_ENFORCE(msg->kind == "fedsvd.u_hat", ErrorCode::kProtocol, "{}: unexpected '{}'",
                     name(), msg->kind);
        recovered_ = numerics::MatMulTN(masks_.a, msg->matrix());
        done_ = true;
        return true;
      }
    }
    return progress;
  }
  bool done() const override { return done_; }
  const Matrix& recovered() const { return recovered_; }

 private:
  std::string session_;
  Matrix h_;
  bool is_task_;
  MaskPair masks_;
  bool shape_sent_ = false;
  bool masks_ready_ = false;
  bool masked_sent_ = false;
  bool done_ = false;
  Matrix recovered_;
};

class FedSvdAggregator : public Actor {
 public:
  FedSvdAggregator(std::string session, std::vector<std::string> parties, std::string task,
                   std::optional<std::size_t> rank)
      : Actor(kServerName), session_(std::move(session)), parties_(std::move(parties)),
        task_(std::move(task)), rank_(rank) {}

  bool Step(MessageBus& bus) override {
    bool progress = false;
    for (const auto& p : parties_) {
      if (parts_.contains(p)) continue;
      if (auto msg = bus.TryReceive(p, name())) {
        VFKT_ENFORCE(msg->kind == "fedsvd.masked", ErrorCode::kProtocol,
                     "server: unexpected '{}'", msg->kind);
        parts_[p] = msg->matrix();
        progress = true;
      }
    }
    if (parts_.size() < parties_.size()) return progress;
    // Concatenate in the agreed party order regardless of arrival order.
    std::vector<Matrix> ordered;
    for (const auto& p : parties_) ordered.push_back(parts_.at(p));
    bus.Send(session_, name(), task_, "fedsvd.u_hat", FedSvdServer(ordered, rank_));
    done_ = true;
    return true;
  }
  bool done() const override { return done_; }

 private:
  std::string session_;
  std::vector<std::string> parties_;
  std::string task_;
  std::optional<std::size_t> rank_;
  std::map<std::string, Matrix> parts_;
  bool done_ = false;
};

// ---------------------------------------------------------------------------
// VFedPCA

int RoundCount(const VFedPcaOptions& o) {
  if (!o.warm_start) return 1;
  return (o.iter_num + o.period_num - 1) / o.period_num;
}

int IterationsInRound(const VFedPcaOptions& o, int round) {
  if (!o.warm_start) return o.iter_num;
  return std::min(o.period_num, o.iter_num - round * o.period_num);
}

std::vector<double> EncodeShare(const EigenShare& s) {
  std::vector<double> out = s.eigvec;
  out.push_back(s.eigval);
  return out;
}

EigenShare DecodeShare(const std::vector<double>& v) {
  VFKT_ENFORCE(v.size() >= 2, ErrorCode::kProtocol, "malformed eigen share");
  return EigenShare{Vector(v.begin(), v.end() - 1), v.back(), false};
}

class VFedPcaParty : public Actor {
 public:
  VFedPcaParty(std::string name, std::string session, Matrix overlap_rows, bool is_task,
               const VFedPcaOptions& opts)
      : Actor(std::move(name)), session_(std::move(session)), h_(std::move(overlap_rows)),
        is_task_(is_task), options_(opts), init_(VFedPcaInit(h_.rows(), opts.seed)) {}

  bool Step(MessageBus& bus) override {
    const int rounds = RoundCount(options_);
    if (round_ < rounds && ready_) {
      const EigenShare share = VFedPcaLocal(h_, IterationsInRound(options_, round_), init_);
      bus.Send(session_, name(), kServerName, "vfedpca.share", EncodeShare(share));
      ++round_;
      ready_ = false;
      if (round_ == rounds && !is_task_) done_ = true;
      return true;
    }
    auto msg = bus.TryReceive(kServerName, name());
    if (!msg) return false;
    if (msg->kind == "vfedpca.sync" && round_ < rounds) {
      init_ = msg->vector();
      VFKT_ENFORCE(numerics::Norm2(init_) > 0.0, ErrorCode::kDegenerate,
                   "vfedpca: aggregate eigenvector vanished");
      ready_ = true;
    } else if (msg->kind == "vfedpca.federated" && is_task_ && round_ == rounds) {
      representation_ = VFedPcaReconstruct(h_, msg->vector());
      done_ = true;
    } else {
      Throw(ErrorCode::kProtocol, "{}: unexpected '{}'", name(), msg->kind);
    }
    return true;
  }
  bool done() const override { return done_; }
  const Matrix& representation() const { return representation_; }

 private:
  std::string session_;
  Matrix h_;
  bool is_task_;
  VFedPcaOptions options_;
  Vector init_;
  int round_ = 0;
  bool ready_ = true;
  bool done_ = false;
  Matrix representation_;
};

class VFedPcaAggregator : public Actor {
 public:
  VFedPcaAggregator(std::string session, std::vector<std::string> parties, std::string task,
                    const VFedPcaOptions& opts)
      : Actor(kServerName), session_(std::move(session)), parties_(std::move(parties)),
        task_(std::move(task)), options_(opts) {}

  bool Step(MessageBus& bus) override {
    bool progress = false;
    for (const auto& p : parties_) {
      if (shares_.contains(p)) continue;
      if (auto msg = bus.TryReceive(p, name())) {
        VFKT_ENFORCE(msg->kind == "vfedpca.share", ErrorCode::kProtocol,
                     "server: unexpected '{}'", msg->kind);
        shares_[p] = DecodeShare(msg->vector());
        progress = true;
      }
    }
    if (shares_.size() < parties_.size()) return progress;
    std::vector<EigenShare> ordered;
    for (const auto& p : parties_) ordered.push_back(shares_.at(p));
    shares_.clear();
    AlignShareSigns(ordered);
    const AggregateResult agg = VFedPcaAggregate(ordered);
    VFKT_ENFORCE(!agg.degenerate, ErrorCode::kDegenerate,
                 "vfedpca: eigenvector shares cancelled out");
    ++round_;
    if (round_ < RoundCount(options_)) {
      for (const auto& p : parties_) bus.Send(session_, name(), p, "vfedpca.sync", agg.u);
    } else {
      bus.Send(session_, name(), task_, "vfedpca.federated", agg.u);
      done_ = true;
    }
    return true;
  }
  bool done() const override { return done_; }

 private:
  std::string session_;
  std::vector<std::string> parties_;
  std::string task_;
  VFedPcaOptions options_;
  std::map<std::string, EigenShare> shares_;
  int round_ = 0;
  bool done_ = false;
};

}  // namespace

FrlOutcome RunFederatedRepresentation(MessageBus& bus, const FrlParticipant& task,
                                      const FrlParticipant& data, const FrlOptions& options) {
  VFKT_ENFORCE(task.features != nullptr && data.features != nullptr, ErrorCode::kInvalidArgument,
               "frl: participant without features");
  VFKT_ENFORCE(task.name != data.name, ErrorCode::kInvalidArgument,
               "frl: task and data party share the name '{}'", task.name);
  if (options.method == FrlMethod::kVFedPca) {
    VFKT_ENFORCE(options.vfedpca.iter_num >= 1 && options.vfedpca.period_num >= 1,
                 ErrorCode::kInvalidArgument, "vfedpca: iter_num and period_num must be >= 1");
  }

  FrlOutcome out;
  out.psi_session = bus.BeginSession("psi");
  {
    PsiServer server(out.psi_session, {task.name, data.name});
    PsiParty t(task.name, out.psi_session, *task.features, options.psi_salt);
    PsiParty d(data.name, out.psi_session, *data.features, options.psi_salt);
    std::vector<Actor*> actors{&t, &d, &server};
    orchestrator::RunActors(bus, actors, options.schedule_seed);
    out.overlap.task_row_map = t.rows();
    out.overlap.data_row_map = d.rows();
    for (std::size_t r : t.rows()) out.overlap.overlapping_ids.push_back(task.features->rows()[r]);
  }
  VFKT_ENFORCE(!out.overlap.empty(), ErrorCode::kInvalidArgument,
               "no overlapping samples between '{}' and '{}'; federated representation learning "
               "requires a non-empty overlap",
               task.name, data.name);

  Matrix h_task = numerics::SelectRows(task.features->values(), out.overlap.task_row_map);
  Matrix h_data = numerics::SelectRows(data.features->values(), out.overlap.data_row_map);
  const std::vector<std::string> parties{task.name, data.name};

  if (options.method == FrlMethod::kFedSvd) {
    out.frl_session = bus.BeginSession("fedsvd");
    KeygenActor keygen(out.frl_session, parties, options.fedsvd);
    FedSvdParty t(task.name, out.frl_session, std::move(h_task), true);
    FedSvdParty d(data.name, out.frl_session, std::move(h_data), false);
    FedSvdAggregator server(out.frl_session, parties, task.name, options.fedsvd.rank);
    std::vector<Actor*> actors{&t, &d, &keygen, &server};
    orchestrator::RunActors(bus, actors, options.schedule_seed);
    out.representation = FederatedRepresentation{t.recovered(), FrlMethod::kFedSvd,
                                                 out.overlap.overlapping_ids};
  } else {
    out.frl_session = bus.BeginSession("vfedpca");
    VFedPcaParty t(task.name, out.frl_session, std::move(h_task), true, options.vfedpca);
    VFedPcaParty d(data.name, out.frl_session, std::move(h_data), false, options.vfedpca);
    VFedPcaAggregator server(out.frl_session, parties, task.name, options.vfedpca);
    std::vector<Actor*> actors{&t, &d, &server};
    orchestrator::RunActors(bus, actors, options.schedule_seed);
    out.representation = FederatedRepresentation{t.representation(), FrlMethod::kVFedPca,
                                                 out.overlap.overlapping_ids};
  }
  out.representation.Validate();
  return out;
}

}  // namespace vfkt::frl
