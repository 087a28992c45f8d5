// core/include/mcfront/counting/cluster.h
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

#ifndef MCFRONT_COUNTING_CLUSTER_H_
#define MCFRONT_COUNTING_CLUSTER_H_

#include <cstddef>
#include <vector>

#include "mcfront/counting/correlation.h"

namespace mcfront::counting {

// Partition of channel indices into co-located microphone groups, together
// with the correlation matrix it was derived from. Groups are ordered by
// their smallest member and each group lists members ascending.
struct ChannelGroups {
  std::vector<std::vector<std::size_t>> groups;
  CorrelationResult corr;
};

// Average-linkage agglomerative clustering on distance 1 - corr. Clusters
// merge while the closest pair sits at average correlation >= threshold.
// Merge ties break on the smallest member id of the candidate pair, so the
// result is deterministic and relabeling-equivariant. A single channel
// yields one singleton group.
ChannelGroups cluster_channels(const CorrelationResult& corr,
                               double threshold = 0.3);

}  // namespace mcfront::counting

#endif  // MCFRONT_COUNTING_CLUSTER_H_
