// core/src/counting/cluster.cc
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

#include "mcfront/counting/cluster.h"

#include <algorithm>
#include <limits>

#include "mcfront/common/error.h"

namespace mcfront::counting {

ChannelGroups cluster_channels(const CorrelationResult& corr,
                               double threshold) {
  const std::size_t n = corr.n;
  if (n == 0 || corr.corr.size() != n * n) {
    throw DataError("cluster: correlation matrix is empty or misshapen");
  }
  if (!(threshold >= 0.0) || threshold > 1.0) {
    throw ConfigError("cluster: threshold must be in [0, 1], got " +
                      std::to_string(threshold));
  }

  std::vector<std::vector<std::size_t>> clusters(n);
  for (std::size_t i = 0; i < n; ++i) clusters[i] = {i};

  const double max_dist = 1.0 - threshold;
  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double sum = 0.0;
        for (std::size_t a : clusters[i]) {
          for (std::size_t b : clusters[j]) sum += 1.0 - corr.at(a, b);
        }
        const double d = sum / static_cast<double>(clusters[i].size() *
                                                   clusters[j].size());
        // Clusters are kept sorted by smallest member, so scanning i < j in
        // order and taking strict improvement is the canonical tie-break.
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    if (!(best <= max_dist)) break;

    auto& dst = clusters[bi];
    dst.insert(dst.end(), clusters[bj].begin(), clusters[bj].end());
    std::sort(dst.begin(), dst.end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }

  ChannelGroups out;
  out.groups = std::move(clusters);
  out.corr = corr;
  return out;
}

}  // namespace mcfront::counting
