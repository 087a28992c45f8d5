// core/include/mcfront/sim/scene.h
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

#ifndef MCFRONT_SIM_SCENE_H_
#define MCFRONT_SIM_SCENE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mcfront/audio/stft.h"
#include "mcfront/audio/waveform.h"
#include "mcfront/beamform/tf_mask.h"

namespace mcfront::sim {

// Microphones sharing a device: one base delay and one reverb tail, plus a
// one-sample spacing between capsules. Channels in a group come out highly
// correlated; channels across groups share only the dry sources.
struct MicGroup {
  std::vector<std::size_t> mics;
  double delay_ms = 0.0;
};

struct SceneSpec {
  std::uint64_t seed = 0;
  std::size_t n_speakers = 2;  // 1..8
  std::size_t n_mics = 4;      // 1..64
  // Must partition {0..n_mics-1}; empty means one group holding every mic.
  std::vector<MicGroup> mic_groups;
  // Per mic; a single value broadcasts, empty means anechoic.
  std::vector<double> t60_s;
  // Per source, dB of source image energy at mic 0 over noise energy. A
  // single value broadcasts; empty disables the diffuse noise entirely.
  std::vector<double> snr_db;
  // Minimum total time with two or more active speakers. The generator
  // redraws the activity pattern until it is reached.
  double overlap_s = 0.0;
  double duration_s = 8.0;  // at least 2 s
  double sample_rate = 16000.0;
  std::string session_id = "scene";
};

// One ground-truth speech segment, times in seconds quantized to 1 ms so the
// in-memory truth and the RTTM file agree exactly.
struct ActivitySegment {
  std::string speaker;
  double start_s = 0.0;
  double dur_s = 0.0;
};

struct SceneTruth {
  SceneSpec spec;
  audio::MultichannelRecording mixture;
  // images[s] is speaker s's reverberated, gain-scaled image at every mic;
  // mixture = sum of images + noise to float tolerance.
  std::vector<audio::MultichannelRecording> images;
  // noise.channels is empty when the spec disables noise.
  audio::MultichannelRecording noise;
  std::vector<std::vector<audio::Waveform>> rirs;  // [speaker][mic]
  // Oracle masks at mic 0: |S| / (|S| + |mix - S|) per TF bin, and its
  // complement.
  std::vector<beamform::TfMask> target_masks;
  std::vector<beamform::TfMask> noise_masks;
  audio::StftConfig stft_config;  // the config the masks are sampled on
  std::vector<ActivitySegment> segments;
  std::size_t true_count = 0;
};

// Throws ConfigError on out-of-range sizes, duration < 2 s, negative t60,
// groups that fail to partition the mics, or requested overlap exceeding the
// duration (an infeasible scene).
void validate(const SceneSpec& spec);

// Unit impulse at delay_ms followed by a noise tail with energy envelope
// e^{-2 delta t}, delta = 3 ln(10) / t60. t60 = 0 gives the pure impulse.
// The tail draws from CounterRng(seed, stream).
audio::Waveform make_rir(double delay_ms, double t60_s, double sample_rate,
                         double length_s, std::uint64_t seed = 0,
                         std::uint64_t stream = 0);

// Renders the full scene: amplitude-modulated pink-noise speech surrogates
// gated by the generated activity, convolved with per-mic RIRs, plus diffuse
// noise at the requested SNRs, peak-normalized to 0.9. Pure function of the
// spec: identical specs give bit-identical truth.
SceneTruth simulate_scene(const SceneSpec& spec);

// Writes the session directory: ch-<id>.wav mixture channels, per-speaker
// reference images at mic 0 under refs/, MSK1 oracle masks under masks/,
// ref.rttm, and manifest.json tying them together. Returns the manifest
// path.
std::string write_scene(const SceneTruth& truth, const std::string& dir);

}  // namespace mcfront::sim

#endif  // MCFRONT_SIM_SCENE_H_
