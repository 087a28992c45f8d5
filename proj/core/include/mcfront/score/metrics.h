// core/include/mcfront/score/metrics.h
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

#ifndef MCFRONT_SCORE_METRICS_H_
#define MCFRONT_SCORE_METRICS_H_

#include <cstddef>
#include <vector>

#include "mcfront/audio/waveform.h"

namespace mcfront::score {

// Percentage of sessions whose estimated speaker count matches the truth:
// 100 * matches / n. Throws DataError on empty or mismatched lengths.
double counting_accuracy(const std::vector<std::size_t>& truths,
                         const std::vector<std::size_t>& estimates);

// Scale-invariant SNR in dB. Both signals are mean-removed, the estimate is
// projected onto the reference, and the ratio of projection to residual
// energy is returned. An estimate equal to the reference up to scale gives
// +infinity. Throws DataError on length mismatch or a silent reference.
double si_snr(const audio::Waveform& reference, const audio::Waveform& estimate);

}  // namespace mcfront::score

#endif  // MCFRONT_SCORE_METRICS_H_
