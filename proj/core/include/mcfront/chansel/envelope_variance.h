// core/include/mcfront/chansel/envelope_variance.h
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

#ifndef MCFRONT_CHANSEL_ENVELOPE_VARIANCE_H_
#define MCFRONT_CHANSEL_ENVELOPE_VARIANCE_H_

#include <cstddef>

#include "mcfront/audio/waveform.h"

namespace mcfront::chansel {

struct EvConfig {
  std::size_t num_bands = 20;  // mel-spaced triangular bands
  double frame_s = 0.040;
  double hop_s = 0.020;
};

// Envelope-variance channel quality score. Sub-band magnitude envelopes on a
// mel filterbank are cube-root compressed, divided by their temporal mean
// (which makes the score invariant to global gain), and the per-band temporal
// variances are averaged. Reverberation smears envelope modulation, so drier
// channels score higher.
//
// Bands whose mean envelope is negligible next to the strongest band (ratio
// below 1e-10) carry no information and are excluded from the average.
//
// Requires at least 2 s of signal and RMS above 1e-6; a silent channel is a
// degenerate signal and raises DataError rather than scoring 0, so dead
// microphones cannot quietly enter the ranking.
double envelope_variance(const audio::Waveform& wave, const EvConfig& cfg = {});

}  // namespace mcfront::chansel

#endif  // MCFRONT_CHANSEL_ENVELOPE_VARIANCE_H_
