// core/src/audio/stft.cc
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

#include "mcfront/audio/stft.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "mcfront/audio/fft.h"
#include "mcfront/common/error.h"

namespace mcfront::audio {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<double> make_window(Window kind, std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Periodic hann, so overlap sums at hop = n/2^k are exactly constant.
    const double h =
        0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) /
                              static_cast<double>(n)));
    w[i] = (kind == Window::kHann) ? h : std::sqrt(h);
  }
  return w;
}

// Periodic overlap sum of analysis*synthesis over one hop, evaluated in
// steady state (all shifted copies of the window that touch a position).
std::vector<double> steady_overlap(const std::vector<double>& ana,
                                   const std::vector<double>& syn,
                                   std::size_t hop) {
  std::vector<double> sum(hop, 0.0);
  for (std::size_t start = 0; start < ana.size(); start += hop) {
    for (std::size_t i = 0; i < hop && start + i < ana.size(); ++i) {
      sum[i] += ana[start + i] * syn[start + i];
    }
  }
  return sum;
}

}  // namespace

void validate(const StftConfig& cfg) {
  if (cfg.frame_len == 0 || !is_pow2(cfg.frame_len)) {
    throw ConfigError("stft: frame_len must be a power of two, got " +
                      std::to_string(cfg.frame_len));
  }
  if (cfg.hop == 0 || cfg.hop > cfg.frame_len) {
    throw ConfigError("stft: hop must satisfy 0 < hop <= frame_len, got hop " +
                      std::to_string(cfg.hop) + " with frame_len " +
                      std::to_string(cfg.frame_len));
  }
  const auto ana = make_window(cfg.window, cfg.frame_len);
  const auto overlap = steady_overlap(ana, ana, cfg.hop);
  const double mn = *std::min_element(overlap.begin(), overlap.end());
  const double mean =
      std::accumulate(overlap.begin(), overlap.end(), 0.0) /
      static_cast<double>(overlap.size());
  if (!(mn >= 0.1 * mean) || !(mean > 0.0)) {
    throw ConfigError(
        "stft: window does not overlap-add to a usable constant at hop " +
        std::to_string(cfg.hop) +
        " (min/mean of the overlap sum is below 0.1); pick a denser hop");
  }
}

Spectrogram stft(const Waveform& wave, const StftConfig& cfg) {
  validate(cfg);
  validate(wave);
  const std::size_t n = cfg.frame_len;
  const std::size_t hop = cfg.hop;
  const std::size_t len = wave.samples.size();
  if (len < n) {
    throw DataError("stft: signal '" + wave.channel_id + "' has " +
                    std::to_string(len) + " samples, shorter than one frame (" +
                    std::to_string(n) + ")");
  }

  const std::size_t pad_front = n - hop;
  // Last frame must start at or after the final padded sample's position so
  // every input sample gets the full overlap sum (see header).
  const std::size_t frames = (pad_front + len - 1) / hop + 1;
  const std::size_t bins = n / 2 + 1;

  const auto window = make_window(cfg.window, n);
  const Fft fft(n);

  Spectrogram spec(frames, bins, 1);
  spec.config = cfg;
  spec.sample_rate = wave.sample_rate;
  spec.sample_count = len;

  std::vector<std::complex<double>> buf(n);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * hop;  // position in the padded signal
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t p = start + i;
      const double x = (p >= pad_front && p - pad_front < len)
                           ? wave.samples[p - pad_front]
                           : 0.0;
      buf[i] = {x * window[i], 0.0};
    }
    fft.forward(buf);
    for (std::size_t k = 0; k < bins; ++k) spec.at(t, k) = buf[k];
  }
  return spec;
}

Spectrogram stft(const MultichannelRecording& rec, const StftConfig& cfg) {
  validate(rec);
  const std::size_t len = rec.channels.front().samples.size();
  for (const auto& ch : rec.channels) {
    if (ch.samples.size() != len) {
      throw DataError("stft: recording '" + rec.session_id +
                      "' has channels of unequal length ('" +
                      rec.channels.front().channel_id + "' " +
                      std::to_string(len) + " vs '" + ch.channel_id + "' " +
                      std::to_string(ch.samples.size()) + ")");
    }
  }

  Spectrogram first = stft(rec.channels.front(), cfg);
  Spectrogram out(first.num_frames(), first.num_bins(), rec.channels.size());
  out.config = cfg;
  out.sample_rate = rec.channels.front().sample_rate;
  out.sample_count = len;

  for (std::size_t c = 0; c < rec.channels.size(); ++c) {
    const Spectrogram single =
        (c == 0) ? std::move(first) : stft(rec.channels[c], cfg);
    for (std::size_t t = 0; t < out.num_frames(); ++t) {
      for (std::size_t k = 0; k < out.num_bins(); ++k) {
        out.at(t, k, c) = single.at(t, k);
      }
    }
  }
  return out;
}

Waveform istft(const Spectrogram& spec) {
  validate(spec.config);
  if (spec.num_channels() != 1) {
    throw DataError("istft: expected a single-channel spectrogram, got " +
                    std::to_string(spec.num_channels()) + " channels");
  }
  const std::size_t n = spec.config.frame_len;
  const std::size_t hop = spec.config.hop;
  const std::size_t frames = spec.num_frames();
  const std::size_t bins = spec.num_bins();
  if (bins != n / 2 + 1) {
    throw DataError("istft: spectrogram has " + std::to_string(bins) +
                    " bins, expected " + std::to_string(n / 2 + 1) +
                    " for frame_len " + std::to_string(n));
  }

  const auto window = make_window(spec.config.window, n);
  const Fft fft(n);

  const std::size_t len_ext = (frames - 1) * hop + n;
  std::vector<double> acc(len_ext, 0.0);
  std::vector<double> norm(len_ext, 0.0);
  std::vector<std::complex<double>> buf(n);

  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t k = 0; k < bins; ++k) buf[k] = spec.at(t, k);
    for (std::size_t k = bins; k < n; ++k) buf[k] = std::conj(spec.at(t, n - k));
    fft.inverse(buf);
    const std::size_t start = t * hop;
    for (std::size_t i = 0; i < n; ++i) {
      acc[start + i] += buf[i].real() * window[i];
      norm[start + i] += window[i] * window[i];
    }
  }

  const std::size_t pad_front = n - hop;
  Waveform out;
  out.sample_rate = spec.sample_rate;
  out.samples.resize(spec.sample_count);
  for (std::size_t i = 0; i < spec.sample_count; ++i) {
    const std::size_t p = pad_front + i;
    out.samples[i] = (p < len_ext && norm[p] > 0.0) ? acc[p] / norm[p] : 0.0;
  }
  return out;
}

}  // namespace mcfront::audio
