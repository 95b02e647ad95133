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

#include "vfkt/orchestrator/actor.h"

#include <numeric>
#include <vector>

#include "vfkt/error.h"
#include "vfkt/numerics/random.h"

namespace vfkt::orchestrator {

void RunActors(MessageBus& bus, std::span<Actor* const> actors, std::uint64_t schedule_seed) {
  numerics::Rng rng(schedule_seed);
  std::vector<std::size_t> order(actors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  while (true) {
    bool all_done = true;
    for (Actor* a : actors) all_done = all_done && a->done();
    if (all_done) return;
    if (schedule_seed != 0) order = rng.Permutation(actors.size());
    bool progress = false;
    for (std::size_t k : order) {
      if (!actors[k]->done()) progress = actors[k]->Step(bus) || progress;
    }
    if (!progress) {
      std::string stuck;
      for (Actor* a : actors) {
        if (!a->done()) stuck += (stuck.empty() ? "" : ", ") + a->name();
      }
      Throw(ErrorCode::kProtocol, "protocol deadlock: no progress from [{}]", stuck);
    }
  }
}

}  // namespace vfkt::orchestrator
