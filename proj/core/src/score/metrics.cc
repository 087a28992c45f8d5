// core/src/score/metrics.cc
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

#include "mcfront/score/metrics.h"

#include <cmath>
#include <limits>
#include <string>

#include "mcfront/common/error.h"

namespace mcfront::score {

double counting_accuracy(const std::vector<std::size_t>& truths,
                         const std::vector<std::size_t>& estimates) {
  if (truths.empty()) {
    throw DataError("counting_accuracy: no sessions to score");
  }
  if (truths.size() != estimates.size()) {
    throw DataError("counting_accuracy: " + std::to_string(truths.size()) +
                    " truths vs " + std::to_string(estimates.size()) +
                    " estimates");
  }
  std::size_t matches = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    if (truths[i] == estimates[i]) ++matches;
  }
  return 100.0 * static_cast<double>(matches) /
         static_cast<double>(truths.size());
}

double si_snr(const audio::Waveform& reference,
              const audio::Waveform& estimate) {
  const auto n = reference.samples.size();
  if (n == 0 || estimate.samples.size() != n) {
    throw DataError("si_snr: signals must be nonempty and equal length, got " +
                    std::to_string(n) + " and " +
                    std::to_string(estimate.samples.size()));
  }
  double ref_mean = 0.0, est_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ref_mean += reference.samples[i];
    est_mean += estimate.samples[i];
  }
  ref_mean /= static_cast<double>(n);
  est_mean /= static_cast<double>(n);

  double dot = 0.0, ref_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = reference.samples[i] - ref_mean;
    const double x = estimate.samples[i] - est_mean;
    dot += x * s;
    ref_energy += s * s;
  }
  if (ref_energy <= 0.0) {
    throw DataError("si_snr: silent reference");
  }
  const double alpha = dot / ref_energy;
  double target_energy = 0.0, error_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = reference.samples[i] - ref_mean;
    const double x = estimate.samples[i] - est_mean;
    const double t = alpha * s;
    target_energy += t * t;
    error_energy += (x - t) * (x - t);
  }
  if (error_energy == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(target_energy / error_energy);
}

}  // namespace mcfront::score
