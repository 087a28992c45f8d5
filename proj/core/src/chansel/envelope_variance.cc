// core/src/chansel/envelope_variance.cc
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

#include "mcfront/chansel/envelope_variance.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mcfront/audio/fft.h"
#include "mcfront/common/error.h"

namespace mcfront::chansel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Triangular mel filterbank over the one-sided spectrum, filters[band][bin].
std::vector<std::vector<double>> mel_filterbank(std::size_t num_bands,
                                                std::size_t fft_size,
                                                double sample_rate) {
  const std::size_t bins = fft_size / 2 + 1;
  std::vector<double> edges(num_bands + 2);
  const double mel_hi = hz_to_mel(sample_rate / 2.0);
  for (std::size_t j = 0; j < edges.size(); ++j) {
    edges[j] = mel_to_hz(mel_hi * static_cast<double>(j) /
                         static_cast<double>(num_bands + 1));
  }

  std::vector<std::vector<double>> filters(num_bands,
                                           std::vector<double>(bins, 0.0));
  for (std::size_t b = 0; b < num_bands; ++b) {
    const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate /
                       static_cast<double>(fft_size);
      if (f <= lo || f >= hi) continue;
      filters[b][k] = (f <= mid) ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
    }
  }
  return filters;
}

}  // namespace

double envelope_variance(const audio::Waveform& wave, const EvConfig& cfg) {
  audio::validate(wave);
  if (cfg.num_bands == 0) {
    throw ConfigError("envelope variance: num_bands must be positive");
  }
  const double sr = wave.sample_rate;
  const std::size_t len = wave.samples.size();
  if (static_cast<double>(len) < 2.0 * sr) {
    throw DataError("envelope variance: channel '" + wave.channel_id +
                    "' is shorter than 2 s");
  }
  double sumsq = 0.0;
  for (double v : wave.samples) sumsq += v * v;
  const double rms = std::sqrt(sumsq / static_cast<double>(len));
  if (!(rms > 1e-6)) {
    throw DataError("envelope variance: channel '" + wave.channel_id +
                    "' is a degenerate signal (RMS " + std::to_string(rms) +
                    " <= 1e-6)");
  }

  const auto frame_len = static_cast<std::size_t>(std::lround(cfg.frame_s * sr));
  const auto hop = static_cast<std::size_t>(std::lround(cfg.hop_s * sr));
  if (frame_len < 2 || hop == 0 || hop > frame_len) {
    throw ConfigError("envelope variance: bad framing (frame " +
                      std::to_string(frame_len) + ", hop " +
                      std::to_string(hop) + ")");
  }
  // Only full frames enter the envelopes; partial edge frames would add
  // spurious modulation.
  const std::size_t frames = (len - frame_len) / hop + 1;

  const std::size_t fft_size = audio::next_pow2(frame_len);
  const std::size_t bins = fft_size / 2 + 1;
  const audio::Fft fft(fft_size);
  const auto filters = mel_filterbank(cfg.num_bands, fft_size, sr);

  std::vector<double> window(frame_len);
  for (std::size_t i = 0; i < frame_len; ++i) {
    window[i] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) /
                                      static_cast<double>(frame_len)));
  }

  // env[band][frame]: cube-root compressed band magnitude envelopes.
  std::vector<std::vector<double>> env(
      cfg.num_bands, std::vector<double>(frames, 0.0));
  std::vector<std::complex<double>> buf(fft_size);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t i = 0; i < frame_len; ++i) {
      buf[i] = {wave.samples[t * hop + i] * window[i], 0.0};
    }
    std::fill(buf.begin() + static_cast<std::ptrdiff_t>(frame_len), buf.end(),
              std::complex<double>{0.0, 0.0});
    fft.forward(buf);
    for (std::size_t b = 0; b < cfg.num_bands; ++b) {
      double e = 0.0;
      for (std::size_t k = 0; k < bins; ++k) {
        if (filters[b][k] != 0.0) e += filters[b][k] * std::abs(buf[k]);
      }
      env[b][t] = std::cbrt(e);
    }
  }

  std::vector<double> band_mean(cfg.num_bands, 0.0);
  double max_mean = 0.0;
  for (std::size_t b = 0; b < cfg.num_bands; ++b) {
    double s = 0.0;
    for (double v : env[b]) s += v;
    band_mean[b] = s / static_cast<double>(frames);
    max_mean = std::max(max_mean, band_mean[b]);
  }

  double var_sum = 0.0;
  std::size_t kept = 0;
  for (std::size_t b = 0; b < cfg.num_bands; ++b) {
    if (!(band_mean[b] > 1e-10 * max_mean)) continue;  // empty band
    double acc = 0.0;
    for (double v : env[b]) {
      const double d = v / band_mean[b] - 1.0;
      acc += d * d;
    }
    var_sum += acc / static_cast<double>(frames);
    ++kept;
  }
  if (kept == 0) {
    throw DataError("envelope variance: channel '" + wave.channel_id +
                    "' has no usable sub-bands (degenerate signal)");
  }
  return var_sum / static_cast<double>(kept);
}

}  // namespace mcfront::chansel
