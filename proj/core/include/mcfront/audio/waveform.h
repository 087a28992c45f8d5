// core/include/mcfront/audio/waveform.h
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

#ifndef MCFRONT_AUDIO_WAVEFORM_H_
#define MCFRONT_AUDIO_WAVEFORM_H_

#include <string>
#include <vector>

namespace mcfront::audio {

// Single-channel audio buffer. Samples are held as doubles regardless of the
// on-disk encoding so that downstream accumulation (covariances, envelopes)
// does not lose precision.
struct Waveform {
  std::vector<double> samples;
  double sample_rate = 0.0;
  std::string channel_id;

  double duration_seconds() const {
    return sample_rate > 0.0
               ? static_cast<double>(samples.size()) / sample_rate
               : 0.0;
  }
};

// A set of channels captured in a common timebase. Channels may come from
// different devices, so equal lengths are not assumed; operations that need
// aligned lengths check for themselves.
struct MultichannelRecording {
  std::vector<Waveform> channels;
  double sample_rate = 0.0;
  std::string session_id;
};

// Throws DataError if the waveform is unusable: no samples or a
// non-positive sample rate.
void validate(const Waveform& wav);

// Throws DataError if the recording has no channels, mixed sample rates, or
// any channel that fails validate(Waveform).
void validate(const MultichannelRecording& rec);

}  // namespace mcfront::audio

#endif  // MCFRONT_AUDIO_WAVEFORM_H_
