// core/include/mcfront/chansel/selection.h
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

#ifndef MCFRONT_CHANSEL_SELECTION_H_
#define MCFRONT_CHANSEL_SELECTION_H_

#include <cstddef>
#include <string>
#include <vector>

namespace mcfront::chansel {

struct ChannelScore {
  std::string channel_id;
  double ev = 0.0;      // envelope variance, finite and >= 0
  double c50_db = 0.0;  // may be +infinity for anechoic channels
};

struct SelectionPolicy {
  double k_pct = 0.65;        // fraction of channels kept per ranking
  std::size_t min_mics = 15;  // floor below which rankings are not trusted
  // When C50 scores are unavailable (no impulse responses and no score
  // file), selection degrades to the EV-only branches.
  bool use_c50 = true;
};

enum class RuleBranch {
  kIntersection,  // EV and C50 shortlists agree on enough channels
  kEvSet,         // intersection too small, EV shortlist large enough
  kTop15Ev,       // both too small, fall back to the best min_mics by EV
  kAll,           // fewer channels than min_mics, keep everything
};

std::string branch_name(RuleBranch branch);

struct SelectionResult {
  std::vector<std::string> selected;  // sorted by channel_id
  RuleBranch rule_branch = RuleBranch::kAll;
  // Audit trail, each sorted by channel_id: the EV shortlist, the C50
  // shortlist, and the top-min_mics-by-EV fallback set.
  std::vector<std::string> i_ev;
  std::vector<std::string> i_c50;
  std::vector<std::string> i_cap;
};

// Microphone subset selection over M = scores.size() channels. Shortlists
// hold the top ceil(k_pct*M) channels by EV and by C50; ranking ties break
// by channel_id ascending. The branch order is:
//   (a) M < min_mics                          -> all channels
//   (b) |I_EV intersect I_C50| >= min_mics    -> that intersection
//   (c) |I_EV| >= min_mics                    -> I_EV
//   (d) otherwise                             -> top min_mics channels by EV
// With use_c50 = false, branch (b) is skipped and i_c50 stays empty.
// Throws DataError on duplicate channel ids and ConfigError on a bad policy.
SelectionResult select_subset(const std::vector<ChannelScore>& scores,
                              const SelectionPolicy& policy = {});

// JSON object with the selected set, branch name, and audit-trail sets.
std::string to_json(const SelectionResult& result);

}  // namespace mcfront::chansel

#endif  // MCFRONT_CHANSEL_SELECTION_H_
