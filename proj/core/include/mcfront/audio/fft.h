// core/include/mcfront/audio/fft.h
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

#ifndef MCFRONT_AUDIO_FFT_H_
#define MCFRONT_AUDIO_FFT_H_

#include <complex>
#include <cstddef>
#include <vector>

namespace mcfront::audio {

constexpr bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n);

// Radix-2 complex FFT with a precomputed twiddle table. Power-of-two sizes
// only. The table makes repeated transforms of one size (STFT frames,
// per-pair correlations) cheap and keeps results bit-deterministic: no
// phase-recurrence drift, no runtime plan tuning.
class Fft {
 public:
  explicit Fft(std::size_t size);

  std::size_t size() const { return size_; }

  void forward(std::vector<std::complex<double>>& buf) const;
  // Includes the 1/N scale.
  void inverse(std::vector<std::complex<double>>& buf) const;

 private:
  void transform(std::vector<std::complex<double>>& buf, bool inverse) const;

  std::size_t size_;
  std::vector<std::complex<double>> twiddle_;  // exp(-2*pi*i*k/N), k < N/2
};

}  // namespace mcfront::audio

#endif  // MCFRONT_AUDIO_FFT_H_
