// core/src/score/segmentation.cc
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

#include "mcfront/score/segmentation.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "mcfront/common/error.h"

namespace mcfront::score {

namespace {

double parse_seconds(const std::string& token, const std::string& path,
                     std::size_t line_no, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || !std::isfinite(value)) {
    throw DataError(path + ":" + std::to_string(line_no) + ": bad " + what +
                    " field '" + token + "'");
  }
  return value;
}

}  // namespace

void validate(const SegmentationHypothesis& hyp) {
  if (hyp.session_id.empty()) {
    throw DataError("segmentation: empty session id");
  }
  for (const auto& seg : hyp.segments) {
    if (seg.speaker.empty()) {
      throw DataError("segmentation: empty speaker label in session " +
                      hyp.session_id);
    }
    if (!std::isfinite(seg.start_s) || !std::isfinite(seg.end_s) ||
        !(seg.end_s > seg.start_s)) {
      throw DataError("segmentation: segment for " + seg.speaker +
                      " in session " + hyp.session_id +
                      " must have finite end > start");
    }
  }
}

std::vector<SegmentationHypothesis> read_rttm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open rttm file " + path);

  std::vector<SegmentationHypothesis> sessions;
  std::map<std::string, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.rfind(";;", 0) == 0) continue;
    std::istringstream ls(line);
    std::string type;
    ls >> type;
    if (type.empty()) continue;
    if (type != "SPEAKER") continue;  // other RTTM record types carry no speech
    std::string session, chan, tbeg, tdur, ortho, stype, speaker;
    ls >> session >> chan >> tbeg >> tdur >> ortho >> stype >> speaker;
    if (speaker.empty()) {
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": SPEAKER line has fewer than 8 fields");
    }
    const double start = parse_seconds(tbeg, path, line_no, "tbeg");
    const double dur = parse_seconds(tdur, path, line_no, "tdur");
    if (!(dur > 0.0)) {
      throw DataError(path + ":" + std::to_string(line_no) +
                      ": nonpositive duration " + tdur);
    }
    auto [it, fresh] = index.try_emplace(session, sessions.size());
    if (fresh) sessions.push_back({session, {}});
    sessions[it->second].segments.push_back({speaker, start, start + dur});
  }
  for (const auto& s : sessions) validate(s);
  return sessions;
}

void write_rttm(const std::string& path,
                const std::vector<SegmentationHypothesis>& sessions) {
  for (const auto& s : sessions) validate(s);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write rttm file " + path);
  for (const auto& s : sessions) {
    for (const auto& seg : s.segments) {
      char line[192];
      std::snprintf(line, sizeof(line),
                    "SPEAKER %s 1 %.3f %.3f <NA> <NA> %s <NA> <NA>\n",
                    s.session_id.c_str(), seg.start_s,
                    seg.end_s - seg.start_s, seg.speaker.c_str());
      out << line;
    }
  }
  if (!out) throw DataError("failed writing rttm file " + path);
}

}  // namespace mcfront::score
