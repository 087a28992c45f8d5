// core/include/mcfront/beamform/spmwf.h
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

#ifndef MCFRONT_BEAMFORM_SPMWF_H_
#define MCFRONT_BEAMFORM_SPMWF_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mcfront/audio/stft.h"
#include "mcfront/beamform/tf_mask.h"

namespace mcfront::beamform {

// Per-frequency target and noise covariance matrices, M x M complex
// Hermitian, stored row-major per bin.
struct CovariancePair {
  std::size_t channels = 0;
  std::size_t bins = 0;
  std::size_t frames_used = 0;
  std::vector<std::complex<double>> rx;  // bins * M * M
  std::vector<std::complex<double>> rn;

  std::complex<double>& rx_at(std::size_t bin, std::size_t i, std::size_t j) {
    return rx[(bin * channels + i) * channels + j];
  }
  std::complex<double> rx_at(std::size_t bin, std::size_t i,
                             std::size_t j) const {
    return rx[(bin * channels + i) * channels + j];
  }
  std::complex<double>& rn_at(std::size_t bin, std::size_t i, std::size_t j) {
    return rn[(bin * channels + i) * channels + j];
  }
  std::complex<double> rn_at(std::size_t bin, std::size_t i,
                             std::size_t j) const {
    return rn[(bin * channels + i) * channels + j];
  }
};

// Per-frequency complex filter weights for one target.
struct FilterBank {
  std::size_t channels = 0;
  std::size_t bins = 0;
  std::size_t reference = 0;
  double mu = 0.0;
  std::vector<std::complex<double>> weights;  // bins * M

  // Bins where R_x e_r vanished; their weights are zero rather than a
  // division by zero.
  std::vector<std::uint32_t> zeroed_bins;

  std::complex<double>& at(std::size_t bin, std::size_t channel) {
    return weights[bin * channels + channel];
  }
  std::complex<double> at(std::size_t bin, std::size_t channel) const {
    return weights[bin * channels + channel];
  }
};

// Mask-weighted covariance estimation:
//   R_f = sum_t m(t,f) y(t,f) y(t,f)^H / sum_t m(t,f).
// Hermitian by construction. Throws DataError if either mask sums to zero at
// some frequency bin (the error names the bin; widen the mask and retry) or
// if shapes disagree.
CovariancePair estimate_covariances(const audio::Spectrogram& spec,
                                    const TfMask& target_mask,
                                    const TfMask& noise_mask);

// Same, with the noise mask defaulted to 1 - target_mask.
CovariancePair estimate_covariances(const audio::Spectrogram& spec,
                                    const TfMask& target_mask);

// Spatial-prediction multichannel Wiener filter, evaluated per frequency:
//
//   w = ((e_r^H R_x e_r) R_n^{-1} R_x e_r)
//       / (mu e_r^H R_x e_r + Tr(R_n^{-1} R_x e_r e_r^H R_x))
//
// with Hermitian-transpose semantics throughout. R_n receives diagonal
// loading diag_loading * tr(R_n)/M * I before the solve; the solve is a
// factorized linear system, never an explicit inverse. A bin whose loaded
// R_n is singular raises DataError; a bin with R_x e_r = 0 gets zero weights
// and is recorded in zeroed_bins. There is no analytic-normalization
// post-gain.
FilterBank spmwf_weights(const CovariancePair& cov, std::size_t reference,
                         double mu = 0.0, double diag_loading = 1e-6);

// Reference channel with the largest posterior-SNR sum
// sum_f (e_r^H R_x e_r) / (e_r^H R_n e_r), accumulated in ascending
// frequency order; ties break to the lowest index. Bins whose noise diagonal
// is nonpositive carry no usable evidence and are skipped.
std::size_t select_reference(const CovariancePair& cov);

// out(t, f) = w_f^H y(t, f). Single-channel output; linear in the input.
audio::Spectrogram apply_filter(const audio::Spectrogram& spec,
                                const FilterBank& fb);

// out = max(mask, floor) * in, element-wise, on a single-channel
// spectrogram.
audio::Spectrogram mask_postfilter(const audio::Spectrogram& spec,
                                   const TfMask& mask, double floor = 0.1);

// Debug dump of the per-frequency weights, for the CLI's diagnostic flag.
std::string to_json(const FilterBank& fb);

}  // namespace mcfront::beamform

#endif  // MCFRONT_BEAMFORM_SPMWF_H_
