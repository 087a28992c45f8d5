// core/src/beamform/spmwf.cc
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

#include "mcfront/beamform/spmwf.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "mcfront/common/error.h"

namespace mcfront::beamform {

namespace {

void check_shapes(const audio::Spectrogram& spec, const TfMask& mask,
                  const char* which) {
  if (mask.frames != spec.num_frames() || mask.bins != spec.num_bins()) {
    throw DataError(std::string(which) + " mask is " +
                    std::to_string(mask.frames) + "x" +
                    std::to_string(mask.bins) + ", spectrogram is " +
                    std::to_string(spec.num_frames()) + "x" +
                    std::to_string(spec.num_bins()));
  }
}

// Accumulates one mask-weighted covariance at one bin into the upper
// triangle, then mirrors; the mirror makes R = R^H exact, not just within
// rounding.
void accumulate_bin(const audio::Spectrogram& spec, const TfMask& mask,
                    std::size_t bin, const char* which,
                    std::complex<double>* out) {
  const std::size_t m = spec.num_channels();
  double weight_sum = 0.0;
  for (std::size_t i = 0; i < m * m; ++i) out[i] = 0.0;
  for (std::size_t t = 0; t < spec.num_frames(); ++t) {
    const double w = mask.at(t, bin);
    if (w == 0.0) continue;
    weight_sum += w;
    const std::complex<double>* y = &spec.at(t, bin, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        out[i * m + j] += w * y[i] * std::conj(y[j]);
      }
    }
  }
  if (weight_sum <= 0.0) {
    throw DataError(std::string(which) + " mask sums to zero at frequency "
                    "bin " + std::to_string(bin) +
                    "; widen the mask before estimating covariances");
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      out[i * m + j] /= weight_sum;
      if (j != i) out[j * m + i] = std::conj(out[i * m + j]);
    }
    // y y^H has a real diagonal; drop the residue that fused
    // multiply-adds leave behind so R = R^H holds exactly.
    out[i * m + i].imag(0.0);
  }
}

Eigen::MatrixXcd matrix_at(const std::vector<std::complex<double>>& flat,
                           std::size_t bin, std::size_t m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m),
                       static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          flat[(bin * m + i) * m + j];
    }
  }
  return out;
}

}  // namespace

CovariancePair estimate_covariances(const audio::Spectrogram& spec,
                                    const TfMask& target_mask,
                                    const TfMask& noise_mask) {
  if (spec.num_channels() == 0 || spec.num_frames() == 0) {
    throw DataError("estimate_covariances: empty spectrogram");
  }
  validate(target_mask);
  validate(noise_mask);
  check_shapes(spec, target_mask, "target");
  check_shapes(spec, noise_mask, "noise");

  const std::size_t m = spec.num_channels();
  CovariancePair cov;
  cov.channels = m;
  cov.bins = spec.num_bins();
  cov.frames_used = spec.num_frames();
  cov.rx.resize(cov.bins * m * m);
  cov.rn.resize(cov.bins * m * m);
  for (std::size_t f = 0; f < cov.bins; ++f) {
    accumulate_bin(spec, target_mask, f, "target", &cov.rx[f * m * m]);
    accumulate_bin(spec, noise_mask, f, "noise", &cov.rn[f * m * m]);
  }
  return cov;
}

CovariancePair estimate_covariances(const audio::Spectrogram& spec,
                                    const TfMask& target_mask) {
  return estimate_covariances(spec, target_mask,
                              complement_mask(target_mask));
}

FilterBank spmwf_weights(const CovariancePair& cov, std::size_t reference,
                         double mu, double diag_loading) {
  if (cov.channels == 0 || cov.bins == 0) {
    throw DataError("spmwf: empty covariances");
  }
  if (reference >= cov.channels) {
    throw ConfigError("spmwf: reference " + std::to_string(reference) +
                      " out of range for " + std::to_string(cov.channels) +
                      " channels");
  }
  if (mu < 0.0) {
    throw ConfigError("spmwf: mu must be nonnegative, got " +
                      std::to_string(mu));
  }
  if (!(diag_loading >= 0.0) || diag_loading >= 1.0) {
    throw ConfigError("spmwf: diagonal loading must be in [0, 1), got " +
                      std::to_string(diag_loading));
  }

  const auto m = static_cast<Eigen::Index>(cov.channels);
  const auto r = static_cast<Eigen::Index>(reference);
  FilterBank fb;
  fb.channels = cov.channels;
  fb.bins = cov.bins;
  fb.reference = reference;
  fb.mu = mu;
  fb.weights.assign(cov.bins * cov.channels, {0.0, 0.0});

  for (std::size_t f = 0; f < cov.bins; ++f) {
    const Eigen::MatrixXcd rx = matrix_at(cov.rx, f, cov.channels);
    Eigen::MatrixXcd rn = matrix_at(cov.rn, f, cov.channels);

    const double trace = rn.trace().real();
    if (!(trace > 0.0)) {
      throw DataError("spmwf: noise covariance at frequency bin " +
                      std::to_string(f) +
                      " is singular (nonpositive trace)");
    }
    rn += diag_loading * trace / static_cast<double>(m) *
          Eigen::MatrixXcd::Identity(m, m);

    // v = R_x e_r; a = e_r^H R_x e_r, real for Hermitian R_x.
    const Eigen::VectorXcd v = rx.col(r);
    const std::complex<double> a = rx(r, r);
    if (v.norm() == 0.0) {
      fb.zeroed_bins.push_back(static_cast<std::uint32_t>(f));
      continue;
    }

    Eigen::LDLT<Eigen::MatrixXcd> ldlt(rn);
    if (ldlt.info() != Eigen::Success) {
      throw DataError("spmwf: noise covariance at frequency bin " +
                      std::to_string(f) + " is singular after loading");
    }
    const Eigen::VectorXcd u = ldlt.solve(v);  // R_n^{-1} R_x e_r

    // Tr(R_n^{-1} R_x e_r e_r^H R_x) collapses to v^H u.
    const std::complex<double> denom = mu * a + v.dot(u);
    if (denom == std::complex<double>(0.0, 0.0)) {
      fb.zeroed_bins.push_back(static_cast<std::uint32_t>(f));
      continue;
    }
    const Eigen::VectorXcd w = (a * u) / denom;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!std::isfinite(w(i).real()) || !std::isfinite(w(i).imag())) {
        throw DataError("spmwf: non-finite weight at frequency bin " +
                        std::to_string(f));
      }
      fb.weights[f * cov.channels + static_cast<std::size_t>(i)] = w(i);
    }
  }
  return fb;
}

std::size_t select_reference(const CovariancePair& cov) {
  if (cov.channels == 0 || cov.bins == 0) {
    throw DataError("select_reference: empty covariances");
  }
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t r = 0; r < cov.channels; ++r) {
    double score = 0.0;
    for (std::size_t f = 0; f < cov.bins; ++f) {
      const double num = cov.rx_at(f, r, r).real();
      const double den = cov.rn_at(f, r, r).real();
      if (den <= 0.0) continue;
      score += num / den;
    }
    if (score > best_score) {
      best_score = score;
      best = r;
    }
  }
  return best;
}

audio::Spectrogram apply_filter(const audio::Spectrogram& spec,
                                const FilterBank& fb) {
  if (fb.channels != spec.num_channels() || fb.bins != spec.num_bins()) {
    throw DataError("apply_filter: filter is for " +
                    std::to_string(fb.channels) + " channels x " +
                    std::to_string(fb.bins) + " bins, spectrogram has " +
                    std::to_string(spec.num_channels()) + " x " +
                    std::to_string(spec.num_bins()));
  }
  audio::Spectrogram out(spec.num_frames(), spec.num_bins(), 1);
  out.config = spec.config;
  out.sample_rate = spec.sample_rate;
  out.sample_count = spec.sample_count;
  for (std::size_t t = 0; t < spec.num_frames(); ++t) {
    for (std::size_t f = 0; f < spec.num_bins(); ++f) {
      std::complex<double> acc = 0.0;
      const std::complex<double>* y = &spec.at(t, f, 0);
      const std::complex<double>* w = &fb.weights[f * fb.channels];
      for (std::size_t i = 0; i < fb.channels; ++i) {
        acc += std::conj(w[i]) * y[i];
      }
      out.at(t, f, 0) = acc;
    }
  }
  return out;
}

audio::Spectrogram mask_postfilter(const audio::Spectrogram& spec,
                                   const TfMask& mask, double floor) {
  if (spec.num_channels() != 1) {
    throw DataError("mask_postfilter: expected a single-channel spectrogram, "
                    "got " + std::to_string(spec.num_channels()) +
                    " channels");
  }
  if (!(floor >= 0.0 && floor <= 1.0)) {
    throw ConfigError("mask_postfilter: floor must be in [0, 1], got " +
                      std::to_string(floor));
  }
  validate(mask);
  check_shapes(spec, mask, "postfilter");
  audio::Spectrogram out = spec;
  for (std::size_t t = 0; t < spec.num_frames(); ++t) {
    for (std::size_t f = 0; f < spec.num_bins(); ++f) {
      out.at(t, f, 0) *= std::max(mask.at(t, f), floor);
    }
  }
  return out;
}

std::string to_json(const FilterBank& fb) {
  nlohmann::json j;
  j["channels"] = fb.channels;
  j["bins"] = fb.bins;
  j["reference"] = fb.reference;
  j["mu"] = fb.mu;
  j["zeroed_bins"] = fb.zeroed_bins;
  auto weights = nlohmann::json::array();
  for (std::size_t f = 0; f < fb.bins; ++f) {
    auto bin = nlohmann::json::array();
    for (std::size_t i = 0; i < fb.channels; ++i) {
      const auto& w = fb.at(f, i);
      bin.push_back({w.real(), w.imag()});
    }
    weights.push_back(std::move(bin));
  }
  j["weights"] = std::move(weights);
  return j.dump(2);
}

}  // namespace mcfront::beamform
