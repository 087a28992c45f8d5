// core/src/counting/correlation.cc
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

#include "mcfront/counting/correlation.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "mcfront/audio/fft.h"
#include "mcfront/common/error.h"

namespace mcfront::counting {

CorrelationResult channel_correlation(const audio::MultichannelRecording& rec,
                                      const CorrelationConfig& cfg) {
  audio::validate(rec);
  const std::size_t n = rec.channels.size();
  if (n < 2) {
    throw DataError("correlation: recording '" + rec.session_id +
                    "' needs at least 2 channels, got " + std::to_string(n));
  }
  if (!(cfg.window_s > 0.0) || !(cfg.max_lag_ms > 0.0)) {
    throw ConfigError("correlation: window_s and max_lag_ms must be positive");
  }
  const double sr = rec.channels.front().sample_rate;
  std::size_t use = std::min<std::size_t>(
      rec.channels.front().samples.size(),
      static_cast<std::size_t>(cfg.window_s * sr));
  for (const auto& ch : rec.channels) use = std::min(use, ch.samples.size());
  if (static_cast<double>(use) < sr) {
    throw DataError("correlation: recording '" + rec.session_id +
                    "' has under 1 s of common audio");
  }

  // Box decimation to about 2 kHz. Correlation-by-lag only needs envelope
  // scale structure and this keeps the FFTs small at 64 channels x 120 s.
  const auto decim = std::max<std::size_t>(
      1, static_cast<std::size_t>(sr / 2000.0));
  const double sr_d = sr / static_cast<double>(decim);
  const std::size_t len = use / decim;
  if (len < 2) {
    throw DataError("correlation: analysis window too short after decimation");
  }
  const auto max_lag = std::min<std::size_t>(
      len - 1,
      static_cast<std::size_t>(std::lround(cfg.max_lag_ms / 1000.0 * sr_d)));

  // Mean-removed decimated channels, their energies, and cached spectra for
  // the cross-correlation products.
  const std::size_t fft_size = audio::next_pow2(2 * len);
  const audio::Fft fft(fft_size);

  std::vector<std::vector<double>> sig(n);
  std::vector<std::vector<std::complex<double>>> spectra(n);
  std::vector<double> energy(n, 0.0);
  CorrelationResult res;
  res.n = n;
  res.corr.assign(n * n, 0.0);
  res.silent.assign(n, false);

  for (std::size_t c = 0; c < n; ++c) {
    auto& s = sig[c];
    s.resize(len);
    const auto& raw = rec.channels[c].samples;
    for (std::size_t i = 0; i < len; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < decim; ++k) acc += raw[i * decim + k];
      s[i] = acc / static_cast<double>(decim);
    }
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(len);
    double e = 0.0;
    for (auto& v : s) {
      v -= mean;
      e += v * v;
    }
    energy[c] = e;
    // RMS check on the raw (undecimated) window so content above the
    // decimated band still counts as signal.
    double raw_e = 0.0;
    for (std::size_t i = 0; i < use; ++i) raw_e += raw[i] * raw[i];
    const double raw_rms = std::sqrt(raw_e / static_cast<double>(use));
    res.silent[c] = !(raw_rms > 1e-6) || !(e > 0.0);

    if (!res.silent[c]) {
      auto& sp = spectra[c];
      sp.assign(fft_size,{0.0, 0.0});
      for (std::size_t i = 0; i < len; ++i) sp[i] = {s[i], 0.0};
      fft.forward(sp);
    }
  }

  for (std::size_t i = 0; i < n; ++i) res.corr[i * n + i] = 1.0;

  std::vector<std::complex<double>> prod(fft_size);
  for (std::size_t i = 0; i < n; ++i) {
    if (res.silent[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (res.silent[j]) continue;
      // Circular cross-correlation x_i * conj-reversed x_j; with 2x zero
      // padding the wrapped lags are the genuine negative lags.
      for (std::size_t k = 0; k < fft_size; ++k) {
        prod[k] = spectra[i][k] * std::conj(spectra[j][k]);
      }
      fft.inverse(prod);

      double best = 0.0;
      for (std::size_t l = 0; l <= max_lag; ++l) {
        best = std::max(best, std::abs(prod[l].real()));
        if (l > 0) {
          best = std::max(best, std::abs(prod[fft_size - l].real()));
        }
      }
      double v = best / std::sqrt(energy[i] * energy[j]);
      // Cauchy-Schwarz bounds the true value by 1; anything within rounding
      // distance of 1 is a duplicated channel and snaps there.
      if (v > 1.0 - 1e-9) v = 1.0;
      v = std::clamp(v, 0.0, 1.0);
      res.corr[i * n + j] = v;
      res.corr[j * n + i] = v;
    }
  }
  return res;
}

}  // namespace mcfront::counting
