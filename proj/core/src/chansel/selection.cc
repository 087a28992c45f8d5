// core/src/chansel/selection.cc
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

#include "mcfront/chansel/selection.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "mcfront/common/error.h"

namespace mcfront::chansel {

namespace {

// Top-k channel ids under a score, descending; equal scores rank by id
// ascending. +infinity sorts first, which is the intended reading for C50.
std::vector<std::string> top_k_ids(const std::vector<ChannelScore>& scores,
                                   std::size_t k, double ChannelScore::*field) {
  std::vector<const ChannelScore*> order;
  order.reserve(scores.size());
  for (const auto& s : scores) order.push_back(&s);
  std::sort(order.begin(), order.end(),
            [field](const ChannelScore* a, const ChannelScore* b) {
              if (a->*field != b->*field) return a->*field > b->*field;
              return a->channel_id < b->channel_id;
            });
  std::vector<std::string> ids;
  ids.reserve(k);
  for (std::size_t i = 0; i < k && i < order.size(); ++i) {
    ids.push_back(order[i]->channel_id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<std::string> intersect_sorted(const std::vector<std::string>& a,
                                          const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

std::string branch_name(RuleBranch branch) {
  switch (branch) {
    case RuleBranch::kIntersection: return "intersection";
    case RuleBranch::kEvSet: return "ev_set";
    case RuleBranch::kTop15Ev: return "top15_ev";
    case RuleBranch::kAll: return "all";
  }
  throw ConfigError("selection: unknown rule branch");
}

SelectionResult select_subset(const std::vector<ChannelScore>& scores,
                              const SelectionPolicy& policy) {
  if (!(policy.k_pct > 0.0) || policy.k_pct > 1.0) {
    throw ConfigError("selection: k_pct must be in (0, 1], got " +
                      std::to_string(policy.k_pct));
  }
  if (policy.min_mics == 0) {
    throw ConfigError("selection: min_mics must be at least 1");
  }
  if (scores.empty()) {
    throw DataError("selection: no channels to select from");
  }
  {
    std::set<std::string> seen;
    for (const auto& s : scores) {
      if (!seen.insert(s.channel_id).second) {
        throw DataError("selection: duplicate channel id '" + s.channel_id +
                        "'");
      }
      if (!std::isfinite(s.ev) || s.ev < 0.0) {
        throw DataError("selection: channel '" + s.channel_id +
                        "' has invalid EV score");
      }
      if (std::isnan(s.c50_db)) {
        throw DataError("selection: channel '" + s.channel_id +
                        "' has NaN C50 score");
      }
    }
  }

  const std::size_t m = scores.size();
  // Small backoff so a product like 0.65 * 20 that lands a hair above the
  // intended integer does not get ceiled one too high.
  const auto k = static_cast<std::size_t>(
      std::ceil(policy.k_pct * static_cast<double>(m) - 1e-9));

  SelectionResult res;
  res.i_ev = top_k_ids(scores, k, &ChannelScore::ev);
  if (policy.use_c50) {
    res.i_c50 = top_k_ids(scores, k, &ChannelScore::c50_db);
  }
  res.i_cap = top_k_ids(scores, std::min(policy.min_mics, m),
                        &ChannelScore::ev);

  const auto inter = intersect_sorted(res.i_ev, res.i_c50);
  if (m < policy.min_mics) {
    res.rule_branch = RuleBranch::kAll;
    res.selected.reserve(m);
    for (const auto& s : scores) res.selected.push_back(s.channel_id);
    std::sort(res.selected.begin(), res.selected.end());
  } else if (policy.use_c50 && inter.size() >= policy.min_mics) {
    res.rule_branch = RuleBranch::kIntersection;
    res.selected = inter;
  } else if (res.i_ev.size() >= policy.min_mics) {
    res.rule_branch = RuleBranch::kEvSet;
    res.selected = res.i_ev;
  } else {
    res.rule_branch = RuleBranch::kTop15Ev;
    res.selected = res.i_cap;
  }
  return res;
}

std::string to_json(const SelectionResult& result) {
  nlohmann::json j;
  j["selected"] = result.selected;
  j["rule_branch"] = branch_name(result.rule_branch);
  j["i_ev"] = result.i_ev;
  j["i_c50"] = result.i_c50;
  j["i_cap"] = result.i_cap;
  return j.dump(2);
}

}  // namespace mcfront::chansel
