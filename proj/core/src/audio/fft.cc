// core/src/audio/fft.cc
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

#include "mcfront/audio/fft.h"

#include <cmath>

#include "mcfront/common/error.h"

namespace mcfront::audio {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

Fft::Fft(std::size_t size) : size_(size) {
  if (!is_pow2(size_)) {
    throw ConfigError("fft: size must be a power of two, got " +
                      std::to_string(size_));
  }
  twiddle_.resize(size_ / 2);
  for (std::size_t k = 0; k < size_ / 2; ++k) {
    const double ang = -kTwoPi * static_cast<double>(k) / static_cast<double>(size_);
    twiddle_[k] = {std::cos(ang), std::sin(ang)};
  }
}

void Fft::forward(std::vector<std::complex<double>>& buf) const {
  transform(buf, false);
}

void Fft::inverse(std::vector<std::complex<double>>& buf) const {
  transform(buf, true);
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& v : buf) v *= scale;
}

void Fft::transform(std::vector<std::complex<double>>& buf, bool inverse) const {
  if (buf.size() != size_) {
    throw ConfigError("fft: buffer size " + std::to_string(buf.size()) +
                      " does not match plan size " + std::to_string(size_));
  }
  const std::size_t n = size_;
  if (n == 1) return;

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(buf[i], buf[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;  // twiddle stride for this stage
    for (std::size_t block = 0; block < n; block += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> w = twiddle_[k * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> t = w * buf[block + k + half];
        const std::complex<double> u = buf[block + k];
        buf[block + k] = u + t;
        buf[block + k + half] = u - t;
      }
    }
  }
}

}  // namespace mcfront::audio
