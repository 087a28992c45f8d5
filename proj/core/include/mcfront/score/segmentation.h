// core/include/mcfront/score/segmentation.h
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

#ifndef MCFRONT_SCORE_SEGMENTATION_H_
#define MCFRONT_SCORE_SEGMENTATION_H_

#include <string>
#include <vector>

namespace mcfront::score {

// One labeled speech interval. Times are seconds; end must exceed start.
struct LabeledSegment {
  std::string speaker;
  double start_s = 0.0;
  double end_s = 0.0;
};

// Per-session diarization output: who spoke when.
struct SegmentationHypothesis {
  std::string session_id;
  std::vector<LabeledSegment> segments;
};

// Throws DataError on an empty session id, empty speaker labels, non-finite
// times, or segments with end <= start.
void validate(const SegmentationHypothesis& hyp);

// RTTM lines: "SPEAKER <session> 1 <tbeg> <tdur> <NA> <NA> <speaker> <NA>
// <NA>". The reader groups SPEAKER lines by session in order of first
// appearance and skips blank lines, ";;" comments, and non-SPEAKER records.
// Throws DataError naming the line on anything unparsable.
std::vector<SegmentationHypothesis> read_rttm(const std::string& path);

// Writes every session's segments in order, times as %.3f seconds.
void write_rttm(const std::string& path,
                const std::vector<SegmentationHypothesis>& sessions);

}  // namespace mcfront::score

#endif  // MCFRONT_SCORE_SEGMENTATION_H_
