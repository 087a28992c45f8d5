// benchmarks/bench_counting.cc
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

#include <cmath>
#include <random>

#include "mcfront/audio/waveform.h"
#include "mcfront/counting/correlation.h"
#include "mcfront/counting/nmesc.h"

namespace {

// Embeddings drawn around a handful of separated centroids, the shape NMESC
// sees in practice.
mcfront::counting::EmbeddingSet clustered_embeddings(std::size_t n,
                                                     std::size_t dim) {
  std::mt19937 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t k = 4;
  std::vector<std::vector<double>> centroids(k, std::vector<double>(dim));
  for (auto& c : centroids) {
    for (auto& x : c) x = g(rng);
  }
  mcfront::counting::EmbeddingSet emb;
  emb.dim = dim;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = centroids[i % k];
    for (auto& x : v) x += 0.2 * g(rng);
    double norm = 0.0;
    for (const double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    emb.vectors.push_back(std::move(v));
    emb.spans.push_back({static_cast<double>(i), static_cast<double>(i) + 1});
    emb.channel_ids.push_back("c0");
  }
  return emb;
}

void BM_NmescCount(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto emb = clustered_embeddings(n, 64);

  for (auto _ : state) {
    auto res = mcfront::counting::nmesc_count(emb, 8);
    benchmark::DoNotOptimize(res.count);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_NmescCount)->Arg(48)->Arg(96)->Arg(192);

void BM_ChannelCorrelation(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(7);
  std::normal_distribution<double> g(0.0, 0.1);
  mcfront::audio::MultichannelRecording rec;
  rec.session_id = "bench";
  for (std::size_t c = 0; c < m; ++c) {
    mcfront::audio::Waveform w;
    w.sample_rate = 16000.0;
    w.channel_id = "ch-" + std::to_string(c);
    w.samples.resize(16000 * 20);
    for (auto& v : w.samples) v = g(rng);
    rec.channels.push_back(std::move(w));
  }

  for (auto _ : state) {
    auto corr = mcfront::counting::channel_correlation(rec);
    benchmark::DoNotOptimize(corr.corr.data());
  }
}
BENCHMARK(BM_ChannelCorrelation)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
