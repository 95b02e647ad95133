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
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "vfkt/numerics/matrix.h"

namespace vfkt::numerics {

// Seeded generator whose output is identical across standard libraries:
// std::mt19937_64 is fully specified, and all distributions below are
// implemented here rather than taken from <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Standard normal via the Marsaglia polar method.
  double Normal();
  // Uniform integer in [0, n).
  std::size_t Index(std::size_t n);

  Matrix NormalMatrix(std::size_t rows, std::size_t cols, double stddev = 1.0);
  std::vector<std::size_t> Permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t MixSeed(std::uint64_t value);
std::uint64_t DeriveSeed(std::uint64_t parent, std::string_view tag, std::uint64_t index = 0);

}  // namespace vfkt::numerics
