// core/src/counting/aggregate.cc
//
// Copyright 2026 The mcfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mcfront/counting/aggregate.h"

#include <cstdint>

#include "json.hpp"
#include "mcfront/common/error.h"

namespace mcfront::counting {

std::size_t aggregate_counts(const std::vector<GroupCount>& per_group) {
  if (per_group.empty()) {
    throw DataError("aggregate: no group counts to aggregate");
  }
  std::uint64_t weighted = 0;  // S = sum n_i * c_i
  std::uint64_t total = 0;     // N = sum n_i
  for (const auto& g : per_group) {
    if (g.count == 0 || g.n_embeddings == 0) {
      throw DataError("aggregate: group " + std::to_string(g.group_index) +
                      " has zero count or zero embeddings");
    }
    weighted += static_cast<std::uint64_t>(g.count) * g.n_embeddings;
    total += g.n_embeddings;
  }
  // round_half_up(S/N) without leaving integer arithmetic.
  return static_cast<std::size_t>((2 * weighted + total) / (2 * total));
}

std::string to_json(const CountEstimate& estimate) {
  nlohmann::json j;
  j["session_count"] = estimate.session_count;
  j["total_embeddings"] = estimate.total_embeddings;
  j["per_group"] = nlohmann::json::array();
  for (const auto& g : estimate.per_group) {
    j["per_group"].push_back({{"group_index", g.group_index},
                              {"count", g.count},
                              {"n_embeddings", g.n_embeddings}});
  }
  return j.dump(2);
}

}  // namespace mcfront::counting
