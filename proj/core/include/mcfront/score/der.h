// core/include/mcfront/score/der.h
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

#ifndef MCFRONT_SCORE_DER_H_
#define MCFRONT_SCORE_DER_H_

#include "mcfront/score/segmentation.h"

namespace mcfront::score {

// Diarization error rate split into its three components. All durations are
// speaker-seconds over the scored regions and
// der = (missed + falarm + confusion) / scored_speech.
struct DerBreakdown {
  double missed_s = 0.0;
  double falarm_s = 0.0;
  double confusion_s = 0.0;
  double scored_speech_s = 0.0;
  double der = 0.0;
};

// Diarization error rate with a no-score collar of +-collar_s around every
// reference segment boundary.
//
// Semantics per scored instant t with Nref active reference speakers, Nhyp
// active hypothesis speakers, and Ncorrect reference speakers whose mapped
// hypothesis speaker is also active:
//   missed    += max(0, Nref - Nhyp)
//   falarm    += max(0, Nhyp - Nref)
//   confusion += min(Nref, Nhyp) - Ncorrect
//   scored    += Nref
// The speaker mapping is the one-to-one assignment maximizing total overlap
// between reference and hypothesis speakers, accumulated over the scored
// regions; every optimal assignment yields the same totals, so the metric
// does not depend on how assignment ties break. All interval arithmetic runs
// on integer millisecond ticks, with no frame grid.
//
// Throws DataError when session ids differ, segments are malformed, or no
// reference speech survives the collar ("nothing to score").
DerBreakdown der(const SegmentationHypothesis& ref,
                 const SegmentationHypothesis& hyp, double collar_s = 0.25);

}  // namespace mcfront::score

#endif  // MCFRONT_SCORE_DER_H_
