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
#include <vector>

#include "vfkt/data/types.h"

namespace vfkt::data {

// Salted 64-bit digests of sample ids. Stands in for the blinded values a
// real PSI protocol would exchange; both parties must use the same salt.
std::vector<std::uint64_t> HashSampleIds(const std::vector<SampleId>& ids, std::uint64_t salt);

// Digests present in both inputs, ascending.
std::vector<std::uint64_t> IntersectDigests(std::vector<std::uint64_t> a,
                                            std::vector<std::uint64_t> b);

// Maps an intersection of digests back onto one party's own ids; returns the
// matching row indices.
std::vector<std::size_t> RowsForDigests(const std::vector<SampleId>& ids, std::uint64_t salt,
                                        const std::vector<std::uint64_t>& digests);

// Simulated private set intersection: exact intersection of salted id
// digests. Both lists must be non-empty and duplicate-free. The result is
// ordered lexicographically by id and may be empty.
OverlapIndex PsiIntersect(const std::vector<SampleId>& task_ids,
                          const std::vector<SampleId>& data_ids, std::uint64_t salt = 0);

}  // namespace vfkt::data
