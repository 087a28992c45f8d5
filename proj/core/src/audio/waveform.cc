// core/src/audio/waveform.cc
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

#include "mcfront/audio/waveform.h"

#include "mcfront/common/error.h"

namespace mcfront::audio {

void validate(const Waveform& wav) {
  if (wav.samples.empty()) {
    throw DataError("waveform '" + wav.channel_id + "': no samples");
  }
  if (!(wav.sample_rate > 0.0)) {
    throw DataError("waveform '" + wav.channel_id +
                    "': sample rate must be positive, got " +
                    std::to_string(wav.sample_rate));
  }
}

void validate(const MultichannelRecording& rec) {
  if (rec.channels.empty()) {
    throw DataError("recording '" + rec.session_id + "': no channels");
  }
  for (const auto& ch : rec.channels) {
    validate(ch);
    if (ch.sample_rate != rec.channels.front().sample_rate) {
      throw DataError("recording '" + rec.session_id +
                      "': mixed sample rates across channels ('" +
                      rec.channels.front().channel_id + "' vs '" +
                      ch.channel_id + "')");
    }
  }
}

}  // namespace mcfront::audio
