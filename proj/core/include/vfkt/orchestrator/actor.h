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

#include <cstdint>
#include <span>
#include <string>

#include "vfkt/orchestrator/message_bus.h"

namespace vfkt::orchestrator {

// A single-threaded protocol participant. Step() consumes whatever messages
// are available, sends replies, and reports whether it made progress. An
// actor touches only its own state and the bus.
class Actor {
 public:
  explicit Actor(std::string name) : name_(std::move(name)) {}
  virtual ~Actor() = default;

  const std::string& name() const { return name_; }
  virtual bool Step(MessageBus& bus) = 0;
  virtual bool done() const = 0;

 private:
  std::string name_;
};

// Steps every actor until all report done. Within each round the visiting
// order is a permutation drawn from `schedule_seed` (0 keeps the given
// order), so protocols are exercised under different interleavings.
// Throws Error(kProtocol) when no actor can make progress.
void RunActors(MessageBus& bus, std::span<Actor* const> actors, std::uint64_t schedule_seed = 0);

}  // namespace vfkt::orchestrator
