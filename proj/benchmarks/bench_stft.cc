// benchmarks/bench_stft.cc
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

#include <random>

#include "mcfront/audio/fft.h"
#include "mcfront/audio/stft.h"

namespace {

mcfront::audio::Waveform noise_wave(std::size_t samples) {
  std::mt19937 rng(1234);
  std::normal_distribution<double> gauss(0.0, 0.2);
  mcfront::audio::Waveform w;
  w.sample_rate = 16000.0;
  w.channel_id = "bench";
  w.samples.resize(samples);
  for (auto& v : w.samples) v = gauss(rng);
  return w;
}

void BM_FftForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const mcfront::audio::Fft fft(n);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<std::complex<double>> base(n);
  for (auto& v : base) v = {uni(rng), uni(rng)};

  for (auto _ : state) {
    auto buf = base;
    fft.forward(buf);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FftForward)->Arg(256)->Arg(1024)->Arg(4096);

void BM_StftRoundTrip(benchmark::State& state) {
  const auto seconds = static_cast<std::size_t>(state.range(0));
  const auto wave = noise_wave(seconds * 16000);
  mcfront::audio::StftConfig cfg;

  for (auto _ : state) {
    auto spec = mcfront::audio::stft(wave, cfg);
    auto back = mcfront::audio::istft(spec);
    benchmark::DoNotOptimize(back.samples.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(wave.samples.size()));
}
BENCHMARK(BM_StftRoundTrip)->Arg(1)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
