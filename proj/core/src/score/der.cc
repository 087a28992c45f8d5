// core/src/score/der.cc
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

#include "mcfront/score/der.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mcfront/common/error.h"

namespace mcfront::score {

namespace {

using Tick = std::int64_t;  // milliseconds

Tick to_tick(double seconds) {
  return static_cast<Tick>(std::llround(seconds * 1000.0));
}

struct Interval {
  Tick begin = 0;
  Tick end = 0;
};

// Union of possibly overlapping intervals as a sorted disjoint list.
std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    return a.begin < b.begin;
  });
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (iv.end <= iv.begin) continue;
    if (!out.empty() && iv.begin <= out.back().end) {
      out.back().end = std::max(out.back().end, iv.end);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

// Speaker labels in lexicographic order mapped to dense indices, plus each
// speaker's merged activity.
struct LabeledTimeline {
  std::vector<std::string> labels;
  std::vector<std::vector<Interval>> activity;
};

LabeledTimeline build_timeline(const SegmentationHypothesis& hyp) {
  std::map<std::string, std::vector<Interval>> by_label;
  for (const auto& seg : hyp.segments) {
    by_label[seg.speaker].push_back({to_tick(seg.start_s),
                                     to_tick(seg.end_s)});
  }
  LabeledTimeline tl;
  for (auto& [label, ivs] : by_label) {
    tl.labels.push_back(label);
    tl.activity.push_back(merge_intervals(std::move(ivs)));
  }
  return tl;
}

// O(n^3) Hungarian algorithm on a square cost matrix, minimizing. The
// returned value is all this scorer needs: every optimal assignment gives
// the same total, and the metric depends on the assignment only through it.
Tick hungarian_min(const std::vector<std::vector<Tick>>& a) {
  const int n = static_cast<int>(a.size());
  constexpr Tick kInf = std::numeric_limits<Tick>::max();
  std::vector<Tick> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<Tick> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      Tick delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Tick cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Tick cost = 0;
  for (int j = 1; j <= n; ++j) cost += a[match[j] - 1][j - 1];
  return cost;
}

// Maximum-total one-to-one assignment over a rectangular overlap matrix.
Tick max_assignment(const std::vector<std::vector<Tick>>& overlap,
                    std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) return 0;
  const std::size_t n = std::max(rows, cols);
  Tick top = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) top = std::max(top, overlap[i][j]);
  }
  std::vector<std::vector<Tick>> cost(n, std::vector<Tick>(n, top));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) cost[i][j] = top - overlap[i][j];
  }
  return static_cast<Tick>(n) * top - hungarian_min(cost);
}

}  // namespace

DerBreakdown der(const SegmentationHypothesis& ref,
                 const SegmentationHypothesis& hyp, double collar_s) {
  validate(ref);
  validate(hyp);
  if (ref.session_id != hyp.session_id) {
    throw DataError("der: session mismatch, reference '" + ref.session_id +
                    "' vs hypothesis '" + hyp.session_id + "'");
  }
  if (collar_s < 0.0 || !std::isfinite(collar_s)) {
    throw ConfigError("der: collar must be finite and nonnegative");
  }
  if (ref.segments.empty()) {
    throw DataError("der: nothing to score, reference for session " +
                    ref.session_id + " has no speech");
  }

  const auto rt = build_timeline(ref);
  const auto ht = build_timeline(hyp);
  const auto nr = rt.labels.size();
  const auto nh = ht.labels.size();

  // No-score zones: +-collar around every reference segment boundary, as
  // given in the file rather than after merging.
  const Tick collar = to_tick(collar_s);
  std::vector<Interval> noscore;
  if (collar > 0) {
    for (const auto& seg : ref.segments) {
      noscore.push_back({to_tick(seg.start_s) - collar,
                         to_tick(seg.start_s) + collar});
      noscore.push_back({to_tick(seg.end_s) - collar,
                         to_tick(seg.end_s) + collar});
    }
    noscore = merge_intervals(std::move(noscore));
  }

  // Sweep over every boundary; between consecutive boundaries the active
  // speaker sets and the no-score state are constant.
  struct Event {
    Tick t;
    int delta;       // +1 activate, -1 deactivate
    int kind;        // 0 ref, 1 hyp, 2 noscore
    std::size_t id;  // speaker index for kinds 0 and 1
  };
  std::vector<Event> events;
  std::vector<Tick> points;
  auto add = [&](const std::vector<Interval>& ivs, int kind, std::size_t id) {
    for (const auto& iv : ivs) {
      events.push_back({iv.begin, +1, kind, id});
      events.push_back({iv.end, -1, kind, id});
      points.push_back(iv.begin);
      points.push_back(iv.end);
    }
  };
  for (std::size_t i = 0; i < nr; ++i) add(rt.activity[i], 0, i);
  for (std::size_t j = 0; j < nh; ++j) add(ht.activity[j], 1, j);
  add(noscore, 2, 0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.t < b.t;
  });

  std::vector<char> ref_on(nr, 0), hyp_on(nh, 0);
  int noscore_on = 0;
  std::vector<std::vector<Tick>> overlap(nr, std::vector<Tick>(nh, 0));
  Tick scored = 0, miss = 0, falarm = 0, min_sum = 0;
  std::size_t e = 0;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    while (e < events.size() && events[e].t == points[k]) {
      const auto& ev = events[e++];
      if (ev.kind == 0) ref_on[ev.id] += ev.delta;
      else if (ev.kind == 1) hyp_on[ev.id] += ev.delta;
      else noscore_on += ev.delta;
    }
    const Tick len = points[k + 1] - points[k];
    if (noscore_on > 0 || len <= 0) continue;
    int n_ref = 0, n_hyp = 0;
    for (std::size_t i = 0; i < nr; ++i) n_ref += ref_on[i] ? 1 : 0;
    for (std::size_t j = 0; j < nh; ++j) n_hyp += hyp_on[j] ? 1 : 0;
    if (n_ref == 0 && n_hyp == 0) continue;
    scored += static_cast<Tick>(n_ref) * len;
    miss += static_cast<Tick>(std::max(0, n_ref - n_hyp)) * len;
    falarm += static_cast<Tick>(std::max(0, n_hyp - n_ref)) * len;
    min_sum += static_cast<Tick>(std::min(n_ref, n_hyp)) * len;
    for (std::size_t i = 0; i < nr; ++i) {
      if (!ref_on[i]) continue;
      for (std::size_t j = 0; j < nh; ++j) {
        if (hyp_on[j]) overlap[i][j] += len;
      }
    }
  }

  if (scored <= 0) {
    throw DataError("der: nothing to score, no reference speech survives "
                    "the collar in session " + ref.session_id);
  }
  const Tick mapped = max_assignment(overlap, nr, nh);
  const Tick confusion = min_sum - mapped;

  DerBreakdown out;
  out.missed_s = static_cast<double>(miss) / 1000.0;
  out.falarm_s = static_cast<double>(falarm) / 1000.0;
  out.confusion_s = static_cast<double>(confusion) / 1000.0;
  out.scored_speech_s = static_cast<double>(scored) / 1000.0;
  out.der = static_cast<double>(miss + falarm + confusion) /
            static_cast<double>(scored);
  return out;
}

}  // namespace mcfront::score
