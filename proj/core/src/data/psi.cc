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

#include "vfkt/data/psi.h"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "vfkt/error.h"
#include "vfkt/hash.h"
#include "vfkt/numerics/random.h"

namespace vfkt::data {
namespace {

void CheckIds(const std::vector<SampleId>& ids, const char* side) {
  VFKT_ENFORCE(!ids.empty(), ErrorCode::kInvalidArgument, "psi: {} id list is empty", side);
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    VFKT_ENFORCE(seen.insert(id.value).second, ErrorCode::kDuplicate,
                 "psi: duplicate {} id '{}'", side, id.value);
  }
}

}  // namespace

std::vector<std::uint64_t> HashSampleIds(const std::vector<SampleId>& ids, std::uint64_t salt) {
  std::vector<std::uint64_t> out;
  out.reserve(ids.size());
  const std::uint64_t seeded = numerics::MixSeed(salt) ^ kFnvOffset;
  for (const auto& id : ids) out.push_back(numerics::MixSeed(Fnv1a64(id.value, seeded)));
  return out;
}

std::vector<std::uint64_t> IntersectDigests(std::vector<std::uint64_t> a,
                                            std::vector<std::uint64_t> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::uint64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> RowsForDigests(const std::vector<SampleId>& ids, std::uint64_t salt,
                                        const std::vector<std::uint64_t>& digests) {
  const auto own = HashSampleIds(ids, salt);
  std::unordered_map<std::uint64_t, std::size_t> where;
  for (std::size_t i = 0; i < own.size(); ++i) {
    VFKT_ENFORCE(where.emplace(own[i], i).second, ErrorCode::kDuplicate,
                 "psi: digest collision on id '{}'", ids[i].value);
  }
  std::vector<std::size_t> rows;
  rows.reserve(digests.size());
  for (std::uint64_t d : digests) {
    const auto it = where.find(d);
    VFKT_ENFORCE(it != where.end(), ErrorCode::kProtocol, "psi: digest not held by this party");
    rows.push_back(it->second);
  }
  // Canonical order: lexicographic by id.
  std::sort(rows.begin(), rows.end(),
            [&](std::size_t x, std::size_t y) { return ids[x] < ids[y]; });
  return rows;
}

OverlapIndex PsiIntersect(const std::vector<SampleId>& task_ids,
                          const std::vector<SampleId>& data_ids, std::uint64_t salt) {
  CheckIds(task_ids, "task");
  CheckIds(data_ids, "data");
  const auto common =
      IntersectDigests(HashSampleIds(task_ids, salt), HashSampleIds(data_ids, salt));
  OverlapIndex out;
  out.task_row_map = RowsForDigests(task_ids, salt, common);
  out.data_row_map = RowsForDigests(data_ids, salt, common);
  for (std::size_t k = 0; k < out.task_row_map.size(); ++k) {
    const SampleId& t = task_ids[out.task_row_map[k]];
    VFKT_ENFORCE(t == data_ids[out.data_row_map[k]], ErrorCode::kProtocol,
                 "psi: digest collision between '{}' and '{}'", t.value,
                 data_ids[out.data_row_map[k]].value);
    out.overlapping_ids.push_back(t);
  }
  return out;
}

}  // namespace vfkt::data
