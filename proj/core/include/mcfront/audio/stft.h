// core/include/mcfront/audio/stft.h
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

#ifndef MCFRONT_AUDIO_STFT_H_
#define MCFRONT_AUDIO_STFT_H_

#include <complex>
#include <cstddef>
#include <vector>

#include "mcfront/audio/waveform.h"

namespace mcfront::audio {

enum class Window {
  kHann,      // periodic hann for both analysis and synthesis
  kSqrtHann,  // square-root hann pair, common in mask-based enhancement
};

struct StftConfig {
  std::size_t frame_len = 1024;  // samples, power of two
  std::size_t hop = 256;         // samples, 0 < hop <= frame_len
  Window window = Window::kHann;
};

// Throws ConfigError unless frame_len is a power of two, 0 < hop <= frame_len,
// and the analysis*synthesis window pair overlap-adds to a usable constant at
// this hop (minimum of the periodic overlap sum at least 10% of its mean, so
// weighted overlap-add division cannot blow up).
void validate(const StftConfig& cfg);

// One-sided complex spectrogram, indexed [frame][bin][channel] with
// bins = frame_len/2 + 1. Channel is the fastest-varying axis so the
// M-channel observation vector at a time-frequency point is contiguous.
class Spectrogram {
 public:
  Spectrogram() = default;
  Spectrogram(std::size_t frames, std::size_t bins, std::size_t channels)
      : frames_(frames), bins_(bins), channels_(channels),
        data_(frames * bins * channels) {}

  std::complex<double>& at(std::size_t frame, std::size_t bin,
                           std::size_t channel = 0) {
    return data_[(frame * bins_ + bin) * channels_ + channel];
  }
  const std::complex<double>& at(std::size_t frame, std::size_t bin,
                                 std::size_t channel = 0) const {
    return data_[(frame * bins_ + bin) * channels_ + channel];
  }

  std::size_t num_frames() const { return frames_; }
  std::size_t num_bins() const { return bins_; }
  std::size_t num_channels() const { return channels_; }

  std::vector<std::complex<double>>& data() { return data_; }
  const std::vector<std::complex<double>>& data() const { return data_; }

  StftConfig config;
  double sample_rate = 0.0;
  // Length of the analyzed signal in samples; istft trims its output back to
  // this length.
  std::size_t sample_count = 0;

 private:
  std::size_t frames_ = 0;
  std::size_t bins_ = 0;
  std::size_t channels_ = 0;
  std::vector<std::complex<double>> data_;
};

// Forward STFT of one channel.
//
// Zero-padding policy: the signal is padded with frame_len - hop zeros in
// front and with tail zeros completing the last frame, so that every input
// sample falls under the full overlap sum of the window pair. This makes the
// weighted overlap-add inverse exact at the edges, where an unpadded hann
// analysis would lose the first sample outright (the window is zero there).
// With L = frame_len - hop + len denoting the front-padded length, the frame
// count is floor((L - 1)/hop) + 1, which is the usual
// floor((len_padded - frame_len)/hop) + 1 over the fully padded length.
//
// Throws DataError if the signal is shorter than one frame.
Spectrogram stft(const Waveform& wave, const StftConfig& cfg);

// Forward STFT of every channel of a recording into one multichannel
// spectrogram. Channels must have equal lengths.
Spectrogram stft(const MultichannelRecording& rec, const StftConfig& cfg);

// Weighted overlap-add inverse for a single-channel spectrogram. Returns a
// waveform of spec.sample_count samples. Throws ConfigError on a non-WOLA
// config and DataError if the spectrogram has more than one channel.
Waveform istft(const Spectrogram& spec);

}  // namespace mcfront::audio

#endif  // MCFRONT_AUDIO_STFT_H_
