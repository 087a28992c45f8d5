// benchmarks/bench_beamform.cc
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

#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "mcfront/audio/stft.h"
#include "mcfront/beamform/spmwf.h"
#include "mcfront/beamform/tf_mask.h"

namespace {

using mcfront::audio::Spectrogram;
using mcfront::beamform::TfMask;

// 500 frames at 513 bins is about 8 s of 16 kHz audio under the default
// STFT config, a realistic per-utterance workload.
constexpr std::size_t kFrames = 500;
constexpr std::size_t kBins = 513;

Spectrogram random_spec(std::size_t channels) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0.0, 1.0);
  Spectrogram spec(kFrames, kBins, channels);
  for (auto& v : spec.data()) v = {g(rng), g(rng)};
  return spec;
}

TfMask random_mask(mcfront::beamform::MaskRole role, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  TfMask mask(kFrames, kBins, role);
  for (auto& v : mask.values) v = uni(rng);
  return mask;
}

void BM_EstimateCovariances(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto spec = random_spec(m);
  const auto target = random_mask(mcfront::beamform::MaskRole::kTarget, 1);
  const auto noise = random_mask(mcfront::beamform::MaskRole::kNoise, 2);

  for (auto _ : state) {
    auto cov = mcfront::beamform::estimate_covariances(spec, target, noise);
    benchmark::DoNotOptimize(cov.rx.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(kFrames * kBins));
}
BENCHMARK(BM_EstimateCovariances)->Arg(2)->Arg(4)->Arg(8);

void BM_SpmwfWeights(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto spec = random_spec(m);
  const auto target = random_mask(mcfront::beamform::MaskRole::kTarget, 1);
  const auto noise = random_mask(mcfront::beamform::MaskRole::kNoise, 2);
  const auto cov = mcfront::beamform::estimate_covariances(spec, target,
                                                           noise);

  for (auto _ : state) {
    auto fb = mcfront::beamform::spmwf_weights(cov, 0, 0.0);
    benchmark::DoNotOptimize(fb.weights.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(kBins));
}
BENCHMARK(BM_SpmwfWeights)->Arg(2)->Arg(4)->Arg(8);

void BM_ApplyFilter(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto spec = random_spec(m);
  const auto target = random_mask(mcfront::beamform::MaskRole::kTarget, 1);
  const auto noise = random_mask(mcfront::beamform::MaskRole::kNoise, 2);
  const auto cov = mcfront::beamform::estimate_covariances(spec, target,
                                                           noise);
  const auto fb = mcfront::beamform::spmwf_weights(cov, 0, 0.0);

  for (auto _ : state) {
    auto out = mcfront::beamform::apply_filter(spec, fb);
    benchmark::DoNotOptimize(out.data().data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(kFrames * kBins));
}
BENCHMARK(BM_ApplyFilter)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
