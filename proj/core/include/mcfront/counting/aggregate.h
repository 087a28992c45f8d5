// core/include/mcfront/counting/aggregate.h
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

#ifndef MCFRONT_COUNTING_AGGREGATE_H_
#define MCFRONT_COUNTING_AGGREGATE_H_

#include <cstddef>
#include <string>
#include <vector>

namespace mcfront::counting {

// Per-microphone-group counting outcome: c_i speakers estimated from n_i
// embeddings.
struct GroupCount {
  std::size_t group_index = 0;
  std::size_t count = 0;        // c_i >= 1
  std::size_t n_embeddings = 0; // n_i >= 1, the aggregation weight
};

struct CountEstimate {
  std::vector<GroupCount> per_group;
  std::size_t session_count = 0;    // the aggregated session-level count
  std::size_t total_embeddings = 0; // N = sum of n_i
};

// Embedding-count-weighted mean of the per-group speaker counts, rounded
// half up: round(sum n_i*c_i / sum n_i), computed in exact integer
// arithmetic as (2S + N) / (2N). Groups seeing more embeddings carry more
// weight. The result always lies between min c_i and max c_i. Throws
// DataError on empty input or any c_i or n_i of zero.
std::size_t aggregate_counts(const std::vector<GroupCount>& per_group);

// JSON object with the session count and per-group diagnostics.
std::string to_json(const CountEstimate& estimate);

}  // namespace mcfront::counting

#endif  // MCFRONT_COUNTING_AGGREGATE_H_
