// core/include/mcfront/counting/correlation.h
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

#ifndef MCFRONT_COUNTING_CORRELATION_H_
#define MCFRONT_COUNTING_CORRELATION_H_

#include <cstddef>
#include <vector>

#include "mcfront/audio/waveform.h"

namespace mcfront::counting {

struct CorrelationConfig {
  double window_s = 120.0;   // analyze at most this much leading audio
  double max_lag_ms = 100.0; // lag search range, covers inter-device delays
};

// Symmetric inter-channel correlation matrix with unit diagonal.
struct CorrelationResult {
  std::size_t n = 0;
  std::vector<double> corr;  // row-major n*n, values in [0, 1]
  // A silent channel (window RMS <= 1e-6) cannot be correlated; its
  // off-diagonal entries are 0 (never NaN) and it is flagged here.
  std::vector<bool> silent;

  double at(std::size_t i, std::size_t j) const { return corr[i * n + j]; }
};

// corr[i][j] = max over lags |l| <= max_lag of the mean-removed normalized
// cross-correlation magnitude of channels i and j over the leading window.
// Signals are box-decimated to roughly 2 kHz first; envelope-scale structure
// survives and the lag search stays cheap on 64-channel sessions. Requires
// at least two channels and one second of audio.
CorrelationResult channel_correlation(const audio::MultichannelRecording& rec,
                                      const CorrelationConfig& cfg = {});

}  // namespace mcfront::counting

#endif  // MCFRONT_COUNTING_CORRELATION_H_
