// tests/test_beamform.cc
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

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "mcfront/audio/stft.h"
#include "mcfront/beamform/spmwf.h"
#include "mcfront/beamform/tf_mask.h"
#include "mcfront/common/error.h"

using mcfront::ConfigError;
using mcfront::DataError;
using mcfront::audio::Spectrogram;
using mcfront::beamform::CovariancePair;
using mcfront::beamform::FilterBank;
using mcfront::beamform::MaskRole;
using mcfront::beamform::TfMask;
using mcfront::beamform::apply_filter;
using mcfront::beamform::complement_mask;
using mcfront::beamform::estimate_covariances;
using mcfront::beamform::mask_postfilter;
using mcfront::beamform::read_mask;
using mcfront::beamform::select_reference;
using mcfront::beamform::spmwf_weights;
using mcfront::beamform::write_mask;

namespace {

using cd = std::complex<double>;

Spectrogram random_spec(std::size_t frames, std::size_t bins,
                        std::size_t channels, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Spectrogram spec(frames, bins, channels);
  for (auto& v : spec.data()) v = cd(gauss(rng), gauss(rng));
  return spec;
}

TfMask random_mask(std::size_t frames, std::size_t bins, unsigned seed,
                   MaskRole role = MaskRole::kTarget) {
  std::mt19937 rng(seed);
  // Keep away from zero so no bin can lose all its mask weight.
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  TfMask mask(frames, bins, role);
  for (auto& v : mask.values) v = uni(rng);
  return mask;
}

// Brute-force mask-weighted covariance, full double loop over every matrix
// entry, no shared accumulation with the production path.
std::vector<cd> naive_covariance(const Spectrogram& spec, const TfMask& mask,
                                 std::size_t bin) {
  const std::size_t m = spec.num_channels();
  std::vector<cd> out(m * m, cd(0.0, 0.0));
  double wsum = 0.0;
  for (std::size_t t = 0; t < spec.num_frames(); ++t) {
    wsum += mask.at(t, bin);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        out[i * m + j] +=
            mask.at(t, bin) * spec.at(t, bin, i) * std::conj(spec.at(t, bin, j));
      }
    }
  }
  for (auto& v : out) v /= wsum;
  return out;
}

// Hermitian positive-definite noise matrix A A^H + s I, mirrored exactly.
void fill_random_pd(CovariancePair& cov, std::size_t bin, bool into_rx,
                    std::mt19937& rng, double ridge) {
  const std::size_t m = cov.channels;
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cd> a(m * m);
  for (auto& v : a) v = cd(gauss(rng), gauss(rng));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      cd sum(0.0, 0.0);
      for (std::size_t k = 0; k < m; ++k) {
        sum += a[i * m + k] * std::conj(a[j * m + k]);
      }
      if (i == j) sum += ridge;
      if (into_rx) {
        cov.rx_at(bin, i, j) = sum;
        cov.rx_at(bin, j, i) = std::conj(sum);
      } else {
        cov.rn_at(bin, i, j) = sum;
        cov.rn_at(bin, j, i) = std::conj(sum);
      }
    }
  }
}

// Rank-1 target covariance sigma^2 d d^H, mirrored exactly.
void fill_rank1(CovariancePair& cov, std::size_t bin,
                const std::vector<cd>& d, double sigma2) {
  const std::size_t m = cov.channels;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const cd v = sigma2 * d[i] * std::conj(d[j]);
      cov.rx_at(bin, i, j) = v;
      cov.rx_at(bin, j, i) = std::conj(v);
    }
  }
}

CovariancePair empty_cov(std::size_t channels, std::size_t bins) {
  CovariancePair cov;
  cov.channels = channels;
  cov.bins = bins;
  cov.frames_used = 1;
  cov.rx.assign(bins * channels * channels, cd(0.0, 0.0));
  cov.rn.assign(bins * channels * channels, cd(0.0, 0.0));
  return cov;
}

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("uniform target mask reproduces the plain sample covariance") {
  const auto spec = random_spec(6, 4, 3, 101);
  TfMask ones(6, 4, MaskRole::kTarget, 1.0);
  const auto noise = random_mask(6, 4, 102, MaskRole::kNoise);
  const auto cov = estimate_covariances(spec, ones, noise);
  for (std::size_t f = 0; f < 4; ++f) {
    const auto oracle = naive_covariance(spec, ones, f);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::abs(cov.rx_at(f, i, j) - oracle[i * 3 + j]) < 1e-12);
      }
    }
  }
}

TEST_CASE("a single masked frame yields the rank-1 outer product exactly") {
  const auto spec = random_spec(5, 3, 2, 103);
  TfMask target(5, 3, MaskRole::kTarget, 0.0);
  TfMask noise(5, 3, MaskRole::kNoise, 1.0);
  for (std::size_t f = 0; f < 3; ++f) target.at(2, f) = 1.0;
  const auto cov = estimate_covariances(spec, target, noise);
  for (std::size_t f = 0; f < 3; ++f) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        const cd expect = spec.at(2, f, i) * std::conj(spec.at(2, f, j));
        CHECK(cov.rx_at(f, i, j) == expect);
      }
    }
  }
}

TEST_CASE("mask-weighted covariances match the naive oracle to 1e-12") {
  std::mt19937 seeds(2024);
  for (int round = 0; round < 50; ++round) {
    const std::size_t frames = 2 + seeds() % 15;  // up to 16
    const std::size_t channels = 1 + seeds() % 4;
    const std::size_t bins = 1 + seeds() % 6;
    const auto spec =
        random_spec(frames, bins, channels, static_cast<unsigned>(seeds()));
    const auto target =
        random_mask(frames, bins, static_cast<unsigned>(seeds()));
    const auto noise = random_mask(frames, bins,
                                   static_cast<unsigned>(seeds()),
                                   MaskRole::kNoise);
    const auto cov = estimate_covariances(spec, target, noise);
    CHECK(cov.frames_used == frames);
    for (std::size_t f = 0; f < bins; ++f) {
      const auto ox = naive_covariance(spec, target, f);
      const auto on = naive_covariance(spec, noise, f);
      for (std::size_t i = 0; i < channels; ++i) {
        for (std::size_t j = 0; j < channels; ++j) {
          CHECK(std::abs(cov.rx_at(f, i, j) - ox[i * channels + j]) < 1e-12);
          CHECK(std::abs(cov.rn_at(f, i, j) - on[i * channels + j]) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("estimated covariances are Hermitian exactly") {
  const auto spec = random_spec(12, 5, 4, 104);
  const auto target = random_mask(12, 5, 105);
  const auto cov = estimate_covariances(spec, target);
  for (std::size_t f = 0; f < 5; ++f) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        CHECK(cov.rx_at(f, i, j) == std::conj(cov.rx_at(f, j, i)));
        CHECK(cov.rn_at(f, i, j) == std::conj(cov.rn_at(f, j, i)));
      }
    }
  }
}

TEST_CASE("an all-zero mask column names the offending bin") {
  const auto spec = random_spec(4, 5, 2, 106);
  auto target = random_mask(4, 5, 107);
  for (std::size_t t = 0; t < 4; ++t) target.at(t, 2) = 0.0;
  const auto noise = random_mask(4, 5, 108, MaskRole::kNoise);
  try {
    estimate_covariances(spec, target, noise);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("frequency bin 2") != std::string::npos);
  }
}

TEST_CASE("the default noise mask is the complement of the target") {
  const auto spec = random_spec(6, 3, 2, 109);
  auto target = random_mask(6, 3, 110);
  const auto one_arg = estimate_covariances(spec, target);
  const auto two_arg = estimate_covariances(spec, target,
                                            complement_mask(target));
  CHECK(one_arg.rn == two_arg.rn);
}

TEST_CASE("single-channel filter weight is unity") {
  auto cov = empty_cov(1, 3);
  for (std::size_t f = 0; f < 3; ++f) {
    cov.rx_at(f, 0, 0) = cd(0.5 + 0.25 * static_cast<double>(f), 0.0);
    cov.rn_at(f, 0, 0) = cd(2.0, 0.0);
  }
  const auto fb = spmwf_weights(cov, 0, 0.0);
  for (std::size_t f = 0; f < 3; ++f) {
    CHECK(std::abs(fb.at(f, 0) - cd(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("two-channel closed form gives the averaging filter") {
  auto cov = empty_cov(2, 1);
  const std::vector<cd> d = {cd(1.0, 0.0), cd(1.0, 0.0)};
  fill_rank1(cov, 0, d, 1.0);
  cov.rn_at(0, 0, 0) = 1.0;
  cov.rn_at(0, 1, 1) = 1.0;
  const auto fb = spmwf_weights(cov, 0, 0.0);
  CHECK(std::abs(fb.at(0, 0) - cd(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(fb.at(0, 1) - cd(0.5, 0.0)) < 1e-12);
  const cd response = std::conj(fb.at(0, 0)) * d[0] +
                      std::conj(fb.at(0, 1)) * d[1];
  CHECK(std::abs(response - d[0]) < 1e-12);
}

TEST_CASE("the filter is distortionless at the reference for rank-1 targets") {
  std::mt19937 rng(2025);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> spower(0.25, 4.0);
  for (int draw = 0; draw < 120; ++draw) {
    const std::size_t m = 2 + static_cast<std::size_t>(draw) % 7;  // 2..8
    auto cov = empty_cov(m, 1);
    std::vector<cd> d(m);
    std::size_t r = rng() % m;
    do {
      for (auto& v : d) v = cd(gauss(rng), gauss(rng));
    } while (std::abs(d[r]) < 0.1);
    fill_rank1(cov, 0, d, spower(rng));
    fill_random_pd(cov, 0, false, rng, 0.5 * static_cast<double>(m));
    const auto fb = spmwf_weights(cov, r, 0.0);
    cd response(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      response += std::conj(fb.at(0, i)) * d[i];
    }
    CHECK(std::abs(response - d[r]) / std::abs(d[r]) <= 1e-8);
  }
}

TEST_CASE("scaling the noise covariance leaves the filter unchanged") {
  std::mt19937 rng(2026);
  auto cov = empty_cov(4, 2);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t f = 0; f < 2; ++f) {
    std::vector<cd> d(4);
    for (auto& v : d) v = cd(gauss(rng), gauss(rng));
    fill_rank1(cov, f, d, 1.5);
    fill_random_pd(cov, f, false, rng, 2.0);
  }
  const auto base = spmwf_weights(cov, 1, 0.0);
  for (double alpha : {0.01, 100.0}) {
    auto scaled = cov;
    for (auto& v : scaled.rn) v *= alpha;
    const auto fb = spmwf_weights(scaled, 1, 0.0);
    for (std::size_t f = 0; f < 2; ++f) {
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(fb.at(f, i) - base.at(f, i)) < 1e-10);
      }
    }
  }
}

TEST_CASE("a vanished target column zeroes the bin and flags it") {
  auto cov = empty_cov(2, 2);
  for (std::size_t f = 0; f < 2; ++f) {
    cov.rn_at(f, 0, 0) = 1.0;
    cov.rn_at(f, 1, 1) = 1.0;
  }
  // Bin 0 has target power only on channel 1, so R_x e_0 = 0 there; bin 1 is
  // healthy.
  cov.rx_at(0, 1, 1) = 1.0;
  fill_rank1(cov, 1, {cd(1.0, 0.0), cd(0.5, 0.0)}, 1.0);
  const auto fb = spmwf_weights(cov, 0, 0.0);
  CHECK(fb.at(0, 0) == cd(0.0, 0.0));
  CHECK(fb.at(0, 1) == cd(0.0, 0.0));
  CHECK(fb.at(1, 0) != cd(0.0, 0.0));
  REQUIRE(fb.zeroed_bins.size() == 1);
  CHECK(fb.zeroed_bins[0] == 0);
}

TEST_CASE("an all-zero noise covariance is rejected as singular") {
  auto cov = empty_cov(2, 1);
  fill_rank1(cov, 0, {cd(1.0, 0.0), cd(1.0, 0.0)}, 1.0);
  try {
    spmwf_weights(cov, 0, 0.0);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("singular") != std::string::npos);
    CHECK(std::string(e.what()).find("bin 0") != std::string::npos);
  }
}

TEST_CASE("reference selection breaks ties toward the lowest channel") {
  auto cov = empty_cov(3, 2);
  for (std::size_t f = 0; f < 2; ++f) {
    for (std::size_t i = 0; i < 3; ++i) {
      cov.rx_at(f, i, i) = 2.0;
      cov.rn_at(f, i, i) = 1.0;
    }
  }
  CHECK(select_reference(cov) == 0);
}

TEST_CASE("reference selection follows target power at equal noise") {
  auto cov = empty_cov(4, 3);
  for (std::size_t f = 0; f < 3; ++f) {
    for (std::size_t i = 0; i < 4; ++i) {
      cov.rx_at(f, i, i) = (i == 2) ? 10.0 : 1.0;
      cov.rn_at(f, i, i) = 1.0;
    }
  }
  CHECK(select_reference(cov) == 2);

  // A channel with essentially no target energy loses to any channel with a
  // finite ratio, whatever its noise floor.
  auto weak = empty_cov(2, 3);
  for (std::size_t f = 0; f < 3; ++f) {
    weak.rx_at(f, 0, 0) = 1e-30;
    weak.rn_at(f, 0, 0) = 1e-3;
    weak.rx_at(f, 1, 1) = 0.5;
    weak.rn_at(f, 1, 1) = 4.0;
  }
  CHECK(select_reference(weak) == 1);
}

TEST_CASE("applying a selector filter passes one channel through") {
  const auto spec = random_spec(4, 3, 3, 111);
  FilterBank fb;
  fb.channels = 3;
  fb.bins = 3;
  fb.reference = 1;
  fb.weights.assign(9, cd(0.0, 0.0));
  for (std::size_t f = 0; f < 3; ++f) fb.at(f, 1) = cd(1.0, 0.0);
  const auto out = apply_filter(spec, fb);
  REQUIRE(out.num_channels() == 1);
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t f = 0; f < 3; ++f) {
      CHECK(out.at(t, f, 0) == spec.at(t, f, 1));
    }
  }
}

TEST_CASE("zero weights produce silence") {
  const auto spec = random_spec(3, 2, 2, 112);
  FilterBank fb;
  fb.channels = 2;
  fb.bins = 2;
  fb.weights.assign(4, cd(0.0, 0.0));
  const auto out = apply_filter(spec, fb);
  for (const auto& v : out.data()) CHECK(v == cd(0.0, 0.0));
}

TEST_CASE("filter output matches hand-computed inner products") {
  Spectrogram spec(3, 2, 2);
  const cd y[3][2][2] = {
      {{cd(1.0, 2.0), cd(-0.5, 0.25)}, {cd(0.0, 1.0), cd(2.0, -1.0)}},
      {{cd(-1.0, 0.0), cd(3.0, 3.0)}, {cd(0.5, 0.5), cd(-2.0, 0.125)}},
      {{cd(4.0, -4.0), cd(1.0, 1.0)}, {cd(0.0, 0.0), cd(-1.0, -1.0)}},
  };
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t f = 0; f < 2; ++f) {
      for (std::size_t c = 0; c < 2; ++c) spec.at(t, f, c) = y[t][f][c];
    }
  }
  FilterBank fb;
  fb.channels = 2;
  fb.bins = 2;
  fb.weights = {cd(0.5, -0.5), cd(0.25, 0.0),   // bin 0
                cd(0.0, 1.0), cd(-1.0, 0.5)};   // bin 1
  const auto out = apply_filter(spec, fb);
  for (std::size_t t = 0; t < 3; ++t) {
    for (std::size_t f = 0; f < 2; ++f) {
      cd expect = std::conj(fb.at(f, 0)) * y[t][f][0];
      expect += std::conj(fb.at(f, 1)) * y[t][f][1];
      CHECK(out.at(t, f, 0) == expect);
    }
  }
}

TEST_CASE("mask postfilter is identity at mask one and floors at mask zero") {
  const auto spec = random_spec(4, 3, 1, 113);
  TfMask ones(4, 3, MaskRole::kTarget, 1.0);
  const auto same = mask_postfilter(spec, ones);
  CHECK(same.data() == spec.data());

  TfMask zeros(4, 3, MaskRole::kTarget, 0.0);
  const auto floored = mask_postfilter(spec, zeros, 0.1);
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t f = 0; f < 3; ++f) {
      CHECK(floored.at(t, f, 0) == spec.at(t, f, 0) * 0.1);
    }
  }
}

TEST_CASE("mask postfilter equals the element-wise oracle") {
  const auto spec = random_spec(5, 4, 1, 114);
  const auto mask = random_mask(5, 4, 115);
  const auto out = mask_postfilter(spec, mask, 0.1);
  for (std::size_t t = 0; t < 5; ++t) {
    for (std::size_t f = 0; f < 4; ++f) {
      CHECK(out.at(t, f, 0) ==
            spec.at(t, f, 0) * std::max(mask.at(t, f), 0.1));
    }
  }
}

TEST_CASE("mask files round-trip through MSK1") {
  std::mt19937 rng(116);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  TfMask mask(7, 5, MaskRole::kTarget);
  // Store float32-representable values so the round trip is exact.
  for (auto& v : mask.values) v = static_cast<double>(
      static_cast<float>(uni(rng)));
  const auto path = temp_path("mcfront_mask_roundtrip.msk");
  write_mask(path.string(), mask);
  const auto back = read_mask(path.string(), MaskRole::kTarget);
  CHECK(back.frames == mask.frames);
  CHECK(back.bins == mask.bins);
  CHECK(back.values == mask.values);
  std::filesystem::remove(path);
}

TEST_CASE("malformed mask files are rejected with precise messages") {
  const auto path = temp_path("mcfront_mask_bad.msk");

  std::ofstream(path, std::ios::binary) << "MSKX\x01\x00\x00\x00";
  CHECK_THROWS_AS(read_mask(path.string()), DataError);

  {
    TfMask mask(2, 2, MaskRole::kTarget, 0.5);
    write_mask(path.string(), mask);
    // Corrupt one value to 1.5, outside the valid range.
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    const float bad = 1.5f;
    std::uint32_t word;
    std::memcpy(&word, &bad, 4);
    f.seekp(12);
    f.write(reinterpret_cast<const char*>(&word), 4);
  }
  try {
    read_mask(path.string());
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("outside [0, 1]") != std::string::npos);
  }

  {
    TfMask mask(2, 2, MaskRole::kTarget, 0.5);
    write_mask(path.string(), mask);
    std::filesystem::resize_file(path, 20);  // drop the last value
  }
  try {
    read_mask(path.string());
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("expected 16") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("out-of-range mask values are rejected before use") {
  const auto spec = random_spec(2, 2, 1, 117);
  TfMask mask(2, 2, MaskRole::kTarget, 0.5);
  mask.at(1, 1) = 1.25;
  CHECK_THROWS_AS(mask_postfilter(spec, mask), DataError);
  TfMask short_mask(2, 2, MaskRole::kTarget, 0.5);
  short_mask.values.pop_back();
  CHECK_THROWS_AS(mask_postfilter(spec, short_mask), DataError);
}

TEST_CASE("filter banks serialize to inspectable json") {
  auto cov = empty_cov(2, 2);
  for (std::size_t f = 0; f < 2; ++f) {
    fill_rank1(cov, f, {cd(1.0, 0.0), cd(0.0, 1.0)}, 2.0);
    cov.rn_at(f, 0, 0) = 1.0;
    cov.rn_at(f, 1, 1) = 1.0;
  }
  const auto fb = spmwf_weights(cov, 0, 0.0);
  const auto parsed = nlohmann::json::parse(mcfront::beamform::to_json(fb));
  CHECK(parsed["reference"] == 0);
  CHECK(parsed["mu"] == 0.0);
  CHECK(parsed["weights"].size() == 2);
  CHECK(parsed["weights"][0].size() == 2);
  CHECK(parsed["weights"][0][0].size() == 2);
}
