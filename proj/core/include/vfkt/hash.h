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
#include <string_view>

namespace vfkt {

inline constexpr std::uint64_t kFnvOffset = 0xCBF29CE484222325ULL;

// FNV-1a, 64-bit. Stable across platforms; not cryptographic.
std::uint64_t Fnv1a64(std::string_view bytes, std::uint64_t state = kFnvOffset);
std::uint64_t Fnv1a64(std::span<const double> values, std::uint64_t state = kFnvOffset);

std::string HexDigest(std::uint64_t value);

}  // namespace vfkt
