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

#include "vfkt/data/types.h"
#include "vfkt/frl/representation.h"
#include "vfkt/orchestrator/message_bus.h"

namespace vfkt::frl {

struct FedSvdOptions {
  std::uint64_t seed = 0;
  // Block size of the block-diagonal masks; 0 draws dense Haar masks.
  std::size_t block_size = 100;
  // Keep only the leading columns of U; unset keeps min(|I|, |X_fed|).
  std::optional<std::size_t> rank;
};

struct VFedPcaOptions {
  std::uint64_t seed = 0;
  int iter_num = 100;
  int period_num = 10;
  // Restart local iterations from the current aggregate every period_num
  // iterations.
  bool warm_start = true;
};

struct FrlOptions {
  FrlMethod method = FrlMethod::kFedSvd;
  FedSvdOptions fedsvd;
  VFedPcaOptions vfedpca;
  std::uint64_t psi_salt = 0;
  // Seed of the actor interleaving; 0 steps actors in a fixed order.
  std::uint64_t schedule_seed = 0;
};

// One party's view going into the protocol: its name on the bus and its
// full local table (already preprocessed). The task party passes the
// columns it contributes for overlapping samples.
struct FrlParticipant {
  std::string name;
  const data::FeatureMatrix* features = nullptr;
};

struct FrlOutcome {
  FederatedRepresentation representation;
  data::OverlapIndex overlap;
  std::string psi_session;
  std::string frl_session;
};

inline constexpr const char* kServerName = "server";
inline constexpr const char* kKeygenName = "keygen";

// Step 1 for one task/data pair: simulated PSI through the aggregation
// server, then FedSVD or VFedPCA on the overlapping rows. Every exchange
// goes through `bus`. Raw features never leave their owner: the server sees
// only id digests, masked matrices, or eigen shares.
//
// Throws Error(kInvalidArgument) when the overlap is empty.
FrlOutcome RunFederatedRepresentation(orchestrator::MessageBus& bus, const FrlParticipant& task,
                                      const FrlParticipant& data, const FrlOptions& options);

}  // namespace vfkt::frl
