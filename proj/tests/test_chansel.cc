// tests/test_chansel.cc
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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "mcfront/audio/fft.h"
#include "mcfront/chansel/c50.h"
#include "mcfront/chansel/envelope_variance.h"
#include "mcfront/chansel/selection.h"
#include "mcfront/common/error.h"

using mcfront::ConfigError;
using mcfront::DataError;
using mcfront::audio::Waveform;
using mcfront::chansel::ChannelScore;
using mcfront::chansel::RuleBranch;
using mcfront::chansel::SelectionPolicy;
using mcfront::chansel::SelectionResult;
using mcfront::chansel::c50_from_rir;
using mcfront::chansel::envelope_variance;
using mcfront::chansel::select_subset;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSr = 16000.0;

Waveform wave_of(std::vector<double> samples, const std::string& id = "ch") {
  Waveform w;
  w.samples = std::move(samples);
  w.sample_rate = kSr;
  w.channel_id = id;
  return w;
}

// Noise with a deep 4 Hz amplitude modulation, the canonical
// high-envelope-variance signal.
std::vector<double> am_noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 0.3);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / kSr;
    const double env = 0.1 + 0.9 * 0.5 * (1.0 + std::sin(2.0 * kPi * 4.0 * t));
    x[i] = env * gauss(rng);
  }
  return x;
}

std::vector<double> fft_convolve(const std::vector<double>& x,
                                 const std::vector<double>& h) {
  const std::size_t out_len = x.size() + h.size() - 1;
  const std::size_t n = mcfront::audio::next_pow2(out_len);
  std::vector<std::complex<double>> fx(n), fh(n);
  for (std::size_t i = 0; i < x.size(); ++i) fx[i] = x[i];
  for (std::size_t i = 0; i < h.size(); ++i) fh[i] = h[i];
  const mcfront::audio::Fft fft(n);
  fft.forward(fx);
  fft.forward(fh);
  for (std::size_t i = 0; i < n; ++i) fx[i] *= fh[i];
  fft.inverse(fx);
  std::vector<double> y(out_len);
  for (std::size_t i = 0; i < out_len; ++i) y[i] = fx[i].real();
  return y;
}

// Deterministic impulse response whose squared envelope is exactly
// exp(-2*delta*t): alternating signs instead of random ones.
std::vector<double> decay_rir(double t60, double seconds) {
  const double delta = 3.0 * std::log(10.0) / t60;
  const auto n = static_cast<std::size_t>(seconds * kSr);
  std::vector<double> h(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double sign = (t % 2 == 0) ? 1.0 : -1.0;
    h[t] = sign * std::exp(-delta * static_cast<double>(t) / kSr);
  }
  return h;
}

ChannelScore score(const std::string& id, double ev, double c50) {
  return ChannelScore{id, ev, c50};
}

std::string pad_id(std::size_t i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "c%02zu", i);
  return buf;
}

// Independent replay of the four-branch rule straight from the audit trail;
// the production code must agree with this bit for bit.
std::vector<std::string> replay_rule(const SelectionResult& r,
                                     const SelectionPolicy& policy,
                                     std::vector<std::string> all_ids) {
  std::sort(all_ids.begin(), all_ids.end());
  if (all_ids.size() < policy.min_mics) return all_ids;
  std::vector<std::string> inter;
  std::set_intersection(r.i_ev.begin(), r.i_ev.end(), r.i_c50.begin(),
                        r.i_c50.end(), std::back_inserter(inter));
  if (policy.use_c50 && inter.size() >= policy.min_mics) return inter;
  if (r.i_ev.size() >= policy.min_mics) return r.i_ev;
  return r.i_cap;
}

}  // namespace

TEST_CASE("constant-envelope tone has near-zero envelope variance") {
  std::vector<double> x(static_cast<std::size_t>(3 * kSr));
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = 0.5 * std::sin(2.0 * kPi * 1000.0 * static_cast<double>(i) / kSr);
  }
  CHECK(envelope_variance(wave_of(std::move(x))) <= 1e-3);
}

TEST_CASE("envelope variance is invariant to global gain") {
  const auto x = am_noise(static_cast<std::size_t>(4 * kSr), 31);
  const double base = envelope_variance(wave_of(x));
  for (double alpha : {0.1, 10.0}) {
    auto scaled = x;
    for (auto& v : scaled) v *= alpha;
    const double ev = envelope_variance(wave_of(std::move(scaled)));
    CHECK(std::abs(ev - base) <= 1e-9 * base);
  }
}

TEST_CASE("reverberation lowers envelope variance") {
  const auto dry = am_noise(static_cast<std::size_t>(4 * kSr), 77);
  auto tail = decay_rir(0.5, 0.5);
  auto wet = fft_convolve(dry, tail);
  wet.resize(dry.size());

  const double ev_dry = envelope_variance(wave_of(dry));
  const double ev_wet = envelope_variance(wave_of(std::move(wet)));
  CHECK(ev_dry > ev_wet);
}

TEST_CASE("silent and too-short channels are rejected") {
  auto silent = std::vector<double>(static_cast<std::size_t>(3 * kSr), 0.0);
  try {
    envelope_variance(wave_of(std::move(silent), "dead"));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("degenerate signal") != std::string::npos);
  }

  auto brief = am_noise(static_cast<std::size_t>(1.5 * kSr), 3);
  CHECK_THROWS_AS(envelope_variance(wave_of(std::move(brief))), DataError);
}

TEST_CASE("unit impulse alone gives the +inf c50 sentinel") {
  std::vector<double> h(800, 0.0);
  h[40] = 1.0;
  const double c50 = c50_from_rir(wave_of(std::move(h), "rir"));
  CHECK(std::isinf(c50));
  CHECK(c50 > 0.0);
}

TEST_CASE("exponential decay c50 matches the analytic value") {
  const double t60 = 0.5;
  const double delta = 3.0 * std::log(10.0) / t60;
  const double expected = 10.0 * std::log10(std::exp(2.0 * delta * 0.05) - 1.0);
  const double got = c50_from_rir(wave_of(decay_rir(t60, 1.0), "rir"));
  CHECK(std::abs(got - expected) < 0.1);
}

TEST_CASE("leading zeros do not change c50") {
  const auto h = decay_rir(0.4, 0.8);
  const double base = c50_from_rir(wave_of(h, "rir"));

  std::vector<double> shifted(100, 0.0);
  shifted.insert(shifted.end(), h.begin(), h.end());
  const double moved = c50_from_rir(wave_of(std::move(shifted), "rir"));
  CHECK(moved == base);
}

TEST_CASE("all-zero impulse response is an error") {
  CHECK_THROWS_AS(c50_from_rir(wave_of(std::vector<double>(1000, 0.0), "rir")),
                  DataError);
}

TEST_CASE("c50 json round-trips numbers and the +inf sentinel") {
  const auto p =
      (std::filesystem::temp_directory_path() / "mcfront_c50.json").string();
  std::map<std::string, double> scores{
      {"c00", 4.7},
      {"c01", -2.25},
      {"c02", std::numeric_limits<double>::infinity()},
  };
  mcfront::chansel::write_c50_json(p, scores);
  const auto back = mcfront::chansel::read_c50_json(p);
  REQUIRE(back.size() == 3);
  CHECK(back.at("c00") == 4.7);
  CHECK(back.at("c01") == -2.25);
  CHECK(std::isinf(back.at("c02")));
  std::filesystem::remove(p);
}

TEST_CASE("malformed c50 json is rejected") {
  const auto p =
      (std::filesystem::temp_directory_path() / "mcfront_badc50.json").string();
  { std::ofstream(p) << "not json at all"; }
  CHECK_THROWS_AS(mcfront::chansel::read_c50_json(p), DataError);
  { std::ofstream(p) << "[1, 2, 3]"; }
  CHECK_THROWS_AS(mcfront::chansel::read_c50_json(p), DataError);
  { std::ofstream(p) << R"({"c00": [1]})"; }
  CHECK_THROWS_AS(mcfront::chansel::read_c50_json(p), DataError);
  CHECK_THROWS_AS(mcfront::chansel::read_c50_json("/nonexistent/c50.json"),
                  DataError);
  std::filesystem::remove(p);
}

TEST_CASE("fewer channels than the floor selects everything") {
  std::vector<ChannelScore> scores;
  for (std::size_t i = 0; i < 10; ++i) {
    scores.push_back(score(pad_id(i), 1.0 + static_cast<double>(i), 5.0));
  }
  const auto res = select_subset(scores);
  CHECK(res.rule_branch == RuleBranch::kAll);
  CHECK(res.selected.size() == 10);
}

TEST_CASE("forty channels with a 20-way shortlist overlap select the intersection") {
  // EV shortlist (k = ceil(0.65*40) = 26) is c00..c25; the C50 shortlist is
  // c06..c31; they overlap in exactly the 20 ids c06..c25.
  std::vector<ChannelScore> scores;
  for (std::size_t i = 0; i < 40; ++i) {
    const double ev = 100.0 - static_cast<double>(i);
    const double c50 = (i >= 6 && i <= 31) ? 100.0 - static_cast<double>(i)
                                           : -100.0 - static_cast<double>(i);
    scores.push_back(score(pad_id(i), ev, c50));
  }
  const auto res = select_subset(scores);
  CHECK(res.rule_branch == RuleBranch::kIntersection);
  REQUIRE(res.selected.size() == 20);
  for (std::size_t i = 6; i <= 25; ++i) {
    CHECK(std::binary_search(res.selected.begin(), res.selected.end(),
                             pad_id(i)));
  }
  CHECK(res.i_ev.size() == 26);
  CHECK(res.i_c50.size() == 26);
}

TEST_CASE("twenty channels fall back to the fifteen best by EV") {
  // ceil(0.65*20) = 13 shortlists cannot reach the floor of 15.
  std::vector<ChannelScore> scores;
  for (std::size_t i = 0; i < 20; ++i) {
    scores.push_back(score(pad_id(i), 200.0 - static_cast<double>(i),
                           static_cast<double>(i)));
  }
  const auto res = select_subset(scores);
  CHECK(res.rule_branch == RuleBranch::kTop15Ev);
  REQUIRE(res.selected.size() == 15);
  for (std::size_t i = 0; i < 15; ++i) {
    CHECK(std::binary_search(res.selected.begin(), res.selected.end(),
                             pad_id(i)));
  }
  CHECK(res.i_ev.size() == 13);
}

TEST_CASE("small shortlist overlap falls back to the EV shortlist") {
  // M = 24, k = ceil(15.6) = 16. EV shortlist c00..c15, C50 shortlist
  // c08..c23, overlap is 8 < 15 but |I_EV| = 16 >= 15.
  std::vector<ChannelScore> scores;
  for (std::size_t i = 0; i < 24; ++i) {
    const double ev = 100.0 - static_cast<double>(i);
    const double c50 = (i >= 8) ? 100.0 + static_cast<double>(i) : 0.0;
    scores.push_back(score(pad_id(i), ev, c50));
  }
  const auto res = select_subset(scores);
  CHECK(res.rule_branch == RuleBranch::kEvSet);
  REQUIRE(res.selected.size() == 16);
  CHECK(res.selected == res.i_ev);
}

TEST_CASE("duplicate channel ids are rejected") {
  std::vector<ChannelScore> scores{score("a", 1.0, 1.0), score("a", 2.0, 2.0)};
  CHECK_THROWS_AS(select_subset(scores), DataError);
}

TEST_CASE("invalid policies and scores are rejected") {
  std::vector<ChannelScore> ok{score("a", 1.0, 1.0)};
  CHECK_THROWS_AS(select_subset(ok, SelectionPolicy{0.0, 15, true}),
                  ConfigError);
  CHECK_THROWS_AS(select_subset(ok, SelectionPolicy{1.5, 15, true}),
                  ConfigError);
  CHECK_THROWS_AS(select_subset(ok, SelectionPolicy{0.65, 0, true}),
                  ConfigError);
  CHECK_THROWS_AS(select_subset({}, SelectionPolicy{}), DataError);

  std::vector<ChannelScore> bad_ev{
      score("a", std::numeric_limits<double>::quiet_NaN(), 1.0)};
  CHECK_THROWS_AS(select_subset(bad_ev), DataError);
  std::vector<ChannelScore> bad_c50{
      score("a", 1.0, std::numeric_limits<double>::quiet_NaN())};
  CHECK_THROWS_AS(select_subset(bad_c50), DataError);
}

TEST_CASE("exactly one branch fires and the audit trail replays the choice") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uni(0.0, 10.0);
  std::uniform_int_distribution<int> coarse(0, 4);

  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng() % 40);
    std::vector<ChannelScore> scores;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < m; ++i) {
      // Coarse-quantized scores make ranking ties common enough to matter.
      scores.push_back(score(pad_id(i), static_cast<double>(coarse(rng)),
                             (trial % 2 == 0) ? uni(rng)
                                              : static_cast<double>(coarse(rng))));
      ids.push_back(scores.back().channel_id);
    }
    SelectionPolicy policy;
    policy.use_c50 = (trial % 3 != 0);
    const auto res = select_subset(scores, policy);

    CHECK(!res.selected.empty());
    CHECK(res.selected.size() <= m);
    std::set<std::string> id_set(ids.begin(), ids.end());
    for (const auto& id : res.selected) CHECK(id_set.count(id) == 1);
    CHECK(replay_rule(res, policy, ids) == res.selected);
  }
}

TEST_CASE("selection ignores input order") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> uni(0.0, 10.0);
  std::vector<ChannelScore> scores;
  for (std::size_t i = 0; i < 30; ++i) {
    scores.push_back(score(pad_id(i), uni(rng), uni(rng)));
  }
  const auto base = select_subset(scores);
  for (int shuffle = 0; shuffle < 5; ++shuffle) {
    std::shuffle(scores.begin(), scores.end(), rng);
    const auto res = select_subset(scores);
    CHECK(res.selected == base.selected);
    CHECK(res.rule_branch == base.rule_branch);
  }
}

TEST_CASE("ranking ties break by channel id") {
  // All EV equal: the EV shortlist must be the lexicographically smallest ids.
  std::vector<ChannelScore> scores;
  for (std::size_t i = 0; i < 20; ++i) {
    scores.push_back(score(pad_id(19 - i), 1.0, 1.0));
  }
  const auto res = select_subset(scores);
  REQUIRE(res.i_ev.size() == 13);
  for (std::size_t i = 0; i < 13; ++i) CHECK(res.i_ev[i] == pad_id(i));
}

TEST_CASE("without c50 the intersection branch never fires") {
  std::vector<ChannelScore> scores;
  for (std::size_t i = 0; i < 40; ++i) {
    scores.push_back(score(pad_id(i), 100.0 - static_cast<double>(i), 0.0));
  }
  SelectionPolicy policy;
  policy.use_c50 = false;
  const auto res = select_subset(scores, policy);
  CHECK(res.rule_branch == RuleBranch::kEvSet);
  CHECK(res.i_c50.empty());
  CHECK(res.selected.size() == 26);
}

TEST_CASE("selection result serializes with the audit trail") {
  std::vector<ChannelScore> scores;
  for (std::size_t i = 0; i < 16; ++i) {
    scores.push_back(score(pad_id(i), static_cast<double>(i), 1.0));
  }
  const auto res = select_subset(scores);
  const auto json = mcfront::chansel::to_json(res);
  CHECK(json.find("\"rule_branch\"") != std::string::npos);
  CHECK(json.find("\"i_ev\"") != std::string::npos);
  CHECK(json.find("\"i_c50\"") != std::string::npos);
  CHECK(json.find("\"i_cap\"") != std::string::npos);
  CHECK(json.find("\"selected\"") != std::string::npos);
}
