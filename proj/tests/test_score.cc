// tests/test_score.cc
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
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "der_reference.h"
#include "doctest.h"
#include "mcfront/common/error.h"
#include "mcfront/score/der.h"
#include "mcfront/score/metrics.h"
#include "mcfront/score/segmentation.h"

using mcfront::ConfigError;
using mcfront::DataError;
using mcfront::score::DerBreakdown;
using mcfront::score::LabeledSegment;
using mcfront::score::SegmentationHypothesis;
using mcfront::score::counting_accuracy;
using mcfront::score::der;
using mcfront::score::read_rttm;
using mcfront::score::si_snr;
using mcfront::score::write_rttm;

namespace {

SegmentationHypothesis session(
    const std::string& id,
    const std::vector<LabeledSegment>& segs) {
  return SegmentationHypothesis{id, segs};
}

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("identical hypothesis scores zero der") {
  const auto ref = session("s", {{"a", 0.0, 5.0}, {"b", 5.0, 10.0}});
  for (const double collar : {0.0, 0.25}) {
    const auto r = der(ref, ref, collar);
    CHECK(r.der == 0.0);
    CHECK(r.missed_s == 0.0);
    CHECK(r.falarm_s == 0.0);
    CHECK(r.confusion_s == 0.0);
    CHECK(r.scored_speech_s > 0.0);
  }
  CHECK(der(ref, ref, 0.0).scored_speech_s == doctest::Approx(10.0));
}

TEST_CASE("label permutation is free under the optimal mapping") {
  const auto ref = session("s", {{"a", 0.0, 5.0}, {"b", 5.0, 10.0}});
  const auto hyp = session("s", {{"x", 0.0, 5.0}, {"y", 5.0, 10.0}});
  CHECK(der(ref, hyp, 0.0).der == 0.0);
  const auto swapped = session("s", {{"b", 0.0, 5.0}, {"a", 5.0, 10.0}});
  CHECK(der(ref, swapped, 0.0).der == 0.0);
}

TEST_CASE("one missed second out of ten scored is der 0.10 exactly") {
  const auto ref = session("s", {{"a", 0.0, 5.0}, {"b", 5.0, 10.0}});
  const auto hyp = session("s", {{"a", 0.0, 4.0}, {"b", 5.0, 10.0}});
  const auto r = der(ref, hyp, 0.0);
  CHECK(r.missed_s == 1.0);
  CHECK(r.falarm_s == 0.0);
  CHECK(r.confusion_s == 0.0);
  CHECK(r.scored_speech_s == 10.0);
  CHECK(r.der == 0.1);
}

TEST_CASE("overlap regions count every reference speaker") {
  // a: [0,4], b: [2,6] overlap on [2,4]; a single hypothesis speaker covers
  // everything, so the overlap costs one miss and the far side confusion.
  const auto ref = session("s", {{"a", 0.0, 4.0}, {"b", 2.0, 6.0}});
  const auto hyp = session("s", {{"c", 0.0, 6.0}});
  const auto r = der(ref, hyp, 0.0);
  CHECK(r.scored_speech_s == 8.0);
  CHECK(r.missed_s == 2.0);
  CHECK(r.falarm_s == 0.0);
  CHECK(r.confusion_s == 2.0);
  CHECK(r.der == 0.5);
}

TEST_CASE("confusion picks the mapping that minimizes error") {
  const auto ref = session("s", {{"a", 0.0, 10.0}});
  const auto hyp = session("s", {{"x", 0.0, 6.0}, {"y", 6.0, 10.0}});
  const auto r = der(ref, hyp, 0.0);
  CHECK(r.confusion_s == 4.0);  // x takes the mapping, y's span is confusion
  CHECK(r.missed_s == 0.0);
  CHECK(r.falarm_s == 0.0);
  CHECK(r.der == doctest::Approx(0.4));
}

TEST_CASE("collar removes boundary errors from scoring") {
  const auto ref = session("s", {{"a", 1.0, 5.0}});
  const auto hyp = session("s", {{"a", 1.2, 5.0}});  // 0.2 s late start
  CHECK(der(ref, hyp, 0.0).missed_s == doctest::Approx(0.2));
  CHECK(der(ref, hyp, 0.25).missed_s == 0.0);
  CHECK(der(ref, hyp, 0.25).der == 0.0);
}

TEST_CASE("matches the frame oracle on 100 randomized sessions") {
  for (std::uint32_t seed = 0; seed < 100; ++seed) {
    const auto pair = der_reference::make_session(seed);
    for (const double collar : {0.0, 0.25}) {
      const double oracle = der_reference::frame_der(pair.ref, pair.hyp,
                                                     collar);
      REQUIRE(oracle >= 0.0);
      const double exact = der(pair.ref, pair.hyp, collar).der;
      CHECK(std::abs(exact - oracle) <= 0.001);
    }
  }
}

TEST_CASE("collar 0.25 never increases der on the randomized suite") {
  for (std::uint32_t seed = 0; seed < 100; ++seed) {
    const auto pair = der_reference::make_session(seed);
    const double loose = der(pair.ref, pair.hyp, 0.25).der;
    const double strict = der(pair.ref, pair.hyp, 0.0).der;
    CHECK(loose <= strict + 1e-12);
  }
}

TEST_CASE("adding a false alarm segment never decreases der") {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    auto pair = der_reference::make_session(seed);
    const double before = der(pair.ref, pair.hyp, 0.25).der;
    // Ref speech ends by 59 s; a segment at 65 s is pure false alarm.
    pair.hyp.segments.push_back({"phantom", 65.0, 67.0});
    const double after = der(pair.ref, pair.hyp, 0.25).der;
    CHECK(after > before);
  }
}

TEST_CASE("breakdown fields stay consistent on random sessions") {
  for (std::uint32_t seed = 0; seed < 20; ++seed) {
    const auto pair = der_reference::make_session(seed);
    const auto r = der(pair.ref, pair.hyp, 0.25);
    CHECK(r.missed_s >= 0.0);
    CHECK(r.falarm_s >= 0.0);
    CHECK(r.confusion_s >= 0.0);
    CHECK(r.scored_speech_s > 0.0);
    CHECK(r.der == doctest::Approx((r.missed_s + r.falarm_s +
                                    r.confusion_s) /
                                   r.scored_speech_s).epsilon(1e-12));
  }
}

TEST_CASE("scoring errors are named") {
  const auto ref = session("s", {{"a", 0.0, 5.0}});
  CHECK_THROWS_AS(der(session("s", {}), ref, 0.25), DataError);
  CHECK_THROWS_AS(der(ref, session("other", {{"a", 0.0, 1.0}}), 0.25),
                  DataError);
  CHECK_THROWS_AS(der(ref, ref, -0.1), ConfigError);
  // A short reference fully swallowed by its own collars scores nothing.
  const auto tiny = session("s", {{"a", 1.0, 1.4}});
  CHECK_THROWS_AS(der(tiny, tiny, 0.25), DataError);
  CHECK_THROWS_AS(der(session("s", {{"a", 2.0, 1.0}}), ref, 0.0), DataError);
  CHECK_THROWS_AS(der(session("s", {{"", 0.0, 1.0}}), ref, 0.0), DataError);
}

TEST_CASE("rttm round trip preserves sessions and ordering") {
  const std::vector<SegmentationHypothesis> sessions = {
      session("alpha", {{"spk0", 0.25, 2.5}, {"spk1", 2.0, 4.75}}),
      session("beta", {{"solo", 0.0, 1.125}}),
  };
  const auto path = temp_path("mcfront_score_roundtrip.rttm");
  write_rttm(path.string(), sessions);
  const auto back = read_rttm(path.string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].session_id == "alpha");
  CHECK(back[1].session_id == "beta");
  REQUIRE(back[0].segments.size() == 2);
  CHECK(back[0].segments[0].speaker == "spk0");
  CHECK(back[0].segments[0].start_s == doctest::Approx(0.25));
  CHECK(back[0].segments[0].end_s == doctest::Approx(2.5));
  CHECK(back[1].segments[0].end_s == doctest::Approx(1.125));
  std::filesystem::remove(path);
}

TEST_CASE("rttm reader groups interleaved sessions and skips comments") {
  const auto path = temp_path("mcfront_score_interleaved.rttm");
  {
    std::ofstream out(path);
    out << ";; produced by hand\n";
    out << "SPEAKER s2 1 0.000 1.000 <NA> <NA> a <NA> <NA>\n";
    out << "\n";
    out << "SPKR-INFO s1 1 <NA> <NA> <NA> unknown a <NA>\n";
    out << "SPEAKER s1 1 0.500 0.250 <NA> <NA> b <NA> <NA>\n";
    out << "SPEAKER s2 1 2.000 1.500 <NA> <NA> c <NA> <NA>\n";
  }
  const auto back = read_rttm(path.string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].session_id == "s2");
  CHECK(back[0].segments.size() == 2);
  CHECK(back[1].session_id == "s1");
  CHECK(back[1].segments.size() == 1);
  CHECK(back[1].segments[0].start_s == doctest::Approx(0.5));
  std::filesystem::remove(path);
}

TEST_CASE("malformed rttm lines are rejected with their line number") {
  const auto path = temp_path("mcfront_score_bad.rttm");
  {
    std::ofstream out(path);
    out << "SPEAKER s 1 0.000 1.000 <NA> <NA> a <NA> <NA>\n";
    out << "SPEAKER s 1 zero 1.000 <NA> <NA> a <NA> <NA>\n";
  }
  CHECK_THROWS_WITH_AS(read_rttm(path.string()),
                       doctest::Contains(":2"), DataError);
  {
    std::ofstream out(path);
    out << "SPEAKER s 1 1.000 0.000 <NA> <NA> a <NA> <NA>\n";
  }
  CHECK_THROWS_AS(read_rttm(path.string()), DataError);
  {
    std::ofstream out(path);
    out << "SPEAKER s 1 1.000\n";
  }
  CHECK_THROWS_AS(read_rttm(path.string()), DataError);
  CHECK_THROWS_AS(read_rttm("/nonexistent/file.rttm"), DataError);
  std::filesystem::remove(path);
}

TEST_CASE("counting accuracy is the exact-match percentage") {
  CHECK(counting_accuracy({2, 3, 4}, {2, 3, 4}) == 100.0);
  CHECK(counting_accuracy({2, 3, 4}, {3, 4, 5}) == 0.0);
  CHECK(counting_accuracy({1, 2, 3, 4}, {1, 2, 3, 5}) == 75.0);
  CHECK_THROWS_AS(counting_accuracy({1, 2}, {1}), DataError);
  CHECK_THROWS_AS(counting_accuracy({}, {}), DataError);
}

TEST_CASE("si_snr returns the infinity sentinel on scaled copies") {
  mcfront::audio::Waveform ref;
  ref.sample_rate = 16000.0;
  std::mt19937 rng(7);
  std::normal_distribution<double> normal;
  ref.samples.resize(4000);
  for (double& v : ref.samples) v = normal(rng);

  CHECK(std::isinf(si_snr(ref, ref)));
  mcfront::audio::Waveform scaled = ref;
  for (double& v : scaled.samples) v *= 2.0;
  CHECK(std::isinf(si_snr(ref, scaled)));
  CHECK(si_snr(ref, scaled) > 0.0);
}

TEST_CASE("si_snr of equal-power orthogonal noise is zero dB") {
  std::mt19937 rng(11);
  std::normal_distribution<double> normal;
  const std::size_t n = 8000;
  std::vector<double> s(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = normal(rng);
    w[i] = normal(rng);
  }
  double s_mean = 0.0, w_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s_mean += s[i] / n;
    w_mean += w[i] / n;
  }
  for (std::size_t i = 0; i < n; ++i) {
    s[i] -= s_mean;
    w[i] -= w_mean;
  }
  double dot = 0.0, s_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dot += w[i] * s[i];
    s_energy += s[i] * s[i];
  }
  double w_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] -= dot / s_energy * s[i];  // orthogonalize against the reference
    w_energy += w[i] * w[i];
  }
  const double match = std::sqrt(s_energy / w_energy);

  mcfront::audio::Waveform ref, est;
  ref.sample_rate = est.sample_rate = 16000.0;
  ref.samples = s;
  est.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) est.samples[i] = s[i] + match * w[i];
  CHECK(std::abs(si_snr(ref, est)) <= 0.2);
}

TEST_CASE("si_snr rejects silence and shape mismatches") {
  mcfront::audio::Waveform silent, other;
  silent.samples.assign(100, 0.0);
  other.samples.assign(100, 1.0);
  other.samples[0] = -1.0;
  CHECK_THROWS_AS(si_snr(silent, other), DataError);
  mcfront::audio::Waveform shorter = other;
  shorter.samples.resize(50);
  CHECK_THROWS_AS(si_snr(other, shorter), DataError);
  CHECK_THROWS_AS(si_snr(mcfront::audio::Waveform{}, {}), DataError);
}
