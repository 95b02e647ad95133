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

#include "vfkt/hash.h"

#include <bit>
#include <cstring>

#include "fmt/format.h"

namespace vfkt {
namespace {
constexpr std::uint64_t kFnvPrime = 0x100000001B3ULL;
}  // namespace

std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t state) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

std::uint64_t Fnv1a64(std::span<const double> values, std::uint64_t state) {
  for (double v : values) {
    // +0.0 and -0.0 hash identically; values are hashed little-endian.
    const std::uint64_t bits = v == 0.0 ? 0 : std::bit_cast<std::uint64_t>(v);
    for (int shift = 0; shift < 64; shift += 8) {
      state ^= (bits >> shift) & 0xFFu;
      state *= kFnvPrime;
    }
  }
  return state;
}

std::string HexDigest(std::uint64_t value) { return fmt::format("{:016x}", value); }

}  // namespace vfkt
