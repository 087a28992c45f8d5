// core/src/sim/scene.cc
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

#include "mcfront/sim/scene.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <utility>

#include "json.hpp"
#include "mcfront/audio/fft.h"
#include "mcfront/audio/wav_io.h"
#include "mcfront/common/error.h"
#include "mcfront/sim/rng.h"

namespace mcfront::sim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNoiseLevel = 0.01;     // diffuse noise RMS before SNR gains
constexpr double kPeakTarget = 0.9;
constexpr double kRampS = 0.005;         // activity on/off ramps
constexpr double kMinSegmentS = 0.3;
constexpr int kActivityRedraws = 20;

// Stream-id layout for the counter RNG; every random decision in a scene
// has its own stream so synthesis order never matters.
constexpr std::uint64_t kStreamSource = 0x100;
constexpr std::uint64_t kStreamActivity = 0x200;
constexpr std::uint64_t kStreamRirTail = 0x300;   // + speaker * 64 + group
constexpr std::uint64_t kStreamNoiseGroup = 0x4000;
constexpr std::uint64_t kStreamNoiseMic = 0x8000;

double quantize_ms(double t) { return std::round(t * 1000.0) / 1000.0; }

std::string speaker_name(std::size_t s) { return "spk" + std::to_string(s); }

std::string channel_name(std::size_t m) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "ch-%02u", static_cast<unsigned>(m));
  return buf;
}

std::vector<MicGroup> resolve_groups(const SceneSpec& spec) {
  if (!spec.mic_groups.empty()) return spec.mic_groups;
  MicGroup all;
  all.mics.resize(spec.n_mics);
  for (std::size_t m = 0; m < spec.n_mics; ++m) all.mics[m] = m;
  return {all};
}

std::vector<double> resolve_per_mic(const std::vector<double>& v,
                                    std::size_t n, const char* what) {
  if (v.empty()) return std::vector<double>(n, 0.0);
  if (v.size() == 1) return std::vector<double>(n, v[0]);
  if (v.size() != n) {
    throw ConfigError(std::string("scene: ") + what + " has " +
                      std::to_string(v.size()) + " entries for " +
                      std::to_string(n) + " targets");
  }
  return v;
}

// Total time with two or more simultaneously active speakers.
double total_overlap(const std::vector<ActivitySegment>& segs) {
  std::vector<std::pair<double, int>> events;
  events.reserve(segs.size() * 2);
  for (const auto& s : segs) {
    events.emplace_back(s.start_s, +1);
    events.emplace_back(s.start_s + s.dur_s, -1);
  }
  std::sort(events.begin(), events.end());
  double overlap = 0.0;
  int active = 0;
  double prev = 0.0;
  for (const auto& [t, d] : events) {
    if (active >= 2) overlap += t - prev;
    active += d;
    prev = t;
  }
  return overlap;
}

std::vector<ActivitySegment> generate_activity(const SceneSpec& spec) {
  for (int attempt = 0; attempt < kActivityRedraws; ++attempt) {
    std::vector<ActivitySegment> segs;
    const double stagger =
        std::min(0.35, std::max(0.0, spec.duration_s - 1.2) /
                           static_cast<double>(spec.n_speakers));
    for (std::size_t s = 0; s < spec.n_speakers; ++s) {
      CounterRng rng(spec.seed, kStreamActivity + s +
                                    (static_cast<std::uint64_t>(attempt)
                                     << 16));
      double t = static_cast<double>(s) * stagger + rng.uniform() * 0.3;
      while (t < spec.duration_s - kMinSegmentS) {
        const double utt = 1.0 + 1.2 * rng.uniform();
        const double end = std::min(t + utt, spec.duration_s);
        const double qs = quantize_ms(t);
        const double qe = quantize_ms(end);
        if (qe - qs >= kMinSegmentS) {
          segs.push_back({speaker_name(s), qs, qe - qs});
        }
        t = end + 0.6 + 0.8 * rng.uniform();
      }
    }
    std::sort(segs.begin(), segs.end(),
              [](const ActivitySegment& a, const ActivitySegment& b) {
                if (a.start_s != b.start_s) return a.start_s < b.start_s;
                return a.speaker < b.speaker;
              });
    if (total_overlap(segs) >= spec.overlap_s) return segs;
  }
  throw DataError("scene: could not reach " +
                  std::to_string(spec.overlap_s) +
                  " s of speaker overlap after " +
                  std::to_string(kActivityRedraws) + " activity redraws; "
                  "lower overlap_s or extend the duration");
}

// Gate envelope for one speaker: 1 inside its segments with raised-cosine
// edges, 0 elsewhere.
std::vector<double> gate_for(const std::vector<ActivitySegment>& segs,
                             const std::string& speaker, std::size_t len,
                             double sr) {
  std::vector<double> gate(len, 0.0);
  const auto ramp = static_cast<std::size_t>(std::lround(kRampS * sr));
  for (const auto& seg : segs) {
    if (seg.speaker != speaker) continue;
    const auto lo = static_cast<std::size_t>(std::lround(seg.start_s * sr));
    const auto hi = std::min(
        len, static_cast<std::size_t>(
                 std::lround((seg.start_s + seg.dur_s) * sr)));
    for (std::size_t i = lo; i < hi; ++i) {
      double g = 1.0;
      if (i < lo + ramp) {
        g = 0.5 - 0.5 * std::cos(kPi * static_cast<double>(i - lo + 1) /
                                 static_cast<double>(ramp));
      } else if (i + ramp >= hi) {
        g = 0.5 - 0.5 * std::cos(kPi * static_cast<double>(hi - i) /
                                 static_cast<double>(ramp));
      }
      gate[i] = std::max(gate[i], g);
    }
  }
  return gate;
}

// Amplitude-modulated pink-noise speech surrogate: white gaussian through a
// three-pole pink filter and a 70 Hz one-pole highpass, 4 Hz amplitude
// modulation of depth 0.85, gated by the speaker's activity, unit RMS over
// the active samples.
std::vector<double> synthesize_source(const SceneSpec& spec, std::size_t s,
                                      const std::vector<double>& gate) {
  const std::size_t len = gate.size();
  CounterRng rng(spec.seed, kStreamSource + s);
  const double phase = rng.uniform() * 2.0 * kPi;
  const double hp_a = 1.0 / (1.0 + 2.0 * kPi * 70.0 / spec.sample_rate);

  std::vector<double> x(len, 0.0);
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  double prev_in = 0.0, prev_out = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double w = rng.normal();
    b0 = 0.99765 * b0 + w * 0.0990460;
    b1 = 0.96300 * b1 + w * 0.2965164;
    b2 = 0.57000 * b2 + w * 1.0526913;
    const double pink = b0 + b1 + b2 + w * 0.1848;
    const double hp = hp_a * (prev_out + pink - prev_in);
    prev_in = pink;
    prev_out = hp;
    const double t = static_cast<double>(i) / spec.sample_rate;
    const double am =
        1.0 - 0.85 * (0.5 + 0.5 * std::sin(2.0 * kPi * 4.0 * t + phase));
    x[i] = hp * am * gate[i];
  }

  double energy = 0.0;
  std::size_t active = 0;
  for (std::size_t i = 0; i < len; ++i) {
    if (gate[i] >= 0.5) {
      energy += x[i] * x[i];
      ++active;
    }
  }
  if (active == 0 || energy <= 0.0) {
    throw DataError("scene: speaker " + speaker_name(s) +
                    " has no active samples");
  }
  const double rms = std::sqrt(energy / static_cast<double>(active));
  for (double& v : x) v /= rms;
  return x;
}

audio::Waveform build_rir(double delay_ms, double t60_s, double sample_rate,
                          double length_s, const std::vector<double>& draws) {
  const auto delay = static_cast<std::size_t>(
      std::lround(delay_ms / 1000.0 * sample_rate));
  auto len = static_cast<std::size_t>(std::lround(length_s * sample_rate));
  len = std::max(len, delay + 1);
  audio::Waveform h;
  h.sample_rate = sample_rate;
  h.samples.assign(len, 0.0);
  h.samples[delay] = 1.0;
  if (t60_s > 0.0) {
    const double delta = 3.0 * std::log(10.0) / t60_s;
    for (std::size_t n = 1; delay + n < len; ++n) {
      h.samples[delay + n] = std::exp(-delta * static_cast<double>(n) /
                                      sample_rate) *
                             draws[n - 1];
    }
  }
  return h;
}

// FFT convolution, output truncated to out_len. The source spectrum is
// cached per FFT size; each speaker is convolved against many mic RIRs.
struct Convolver {
  const std::vector<double>* signal = nullptr;
  std::map<std::size_t, std::vector<std::complex<double>>> spectra;

  std::vector<double> run(const std::vector<double>& h, std::size_t out_len) {
    const std::size_t need = signal->size() + h.size() - 1;
    const std::size_t n = audio::next_pow2(need);
    audio::Fft fft(n);
    auto it = spectra.find(n);
    if (it == spectra.end()) {
      std::vector<std::complex<double>> spec(n);
      for (std::size_t i = 0; i < signal->size(); ++i) {
        spec[i] = (*signal)[i];
      }
      fft.forward(spec);
      it = spectra.emplace(n, std::move(spec)).first;
    }
    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < h.size(); ++i) buf[i] = h[i];
    fft.forward(buf);
    for (std::size_t i = 0; i < n; ++i) buf[i] *= it->second[i];
    fft.inverse(buf);
    std::vector<double> out(out_len, 0.0);
    const std::size_t copy = std::min(out_len, need);
    for (std::size_t i = 0; i < copy; ++i) out[i] = buf[i].real();
    return out;
  }
};

double signal_energy(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

}  // namespace

void validate(const SceneSpec& spec) {
  if (spec.n_speakers < 1 || spec.n_speakers > 8) {
    throw ConfigError("scene: n_speakers must be in 1..8, got " +
                      std::to_string(spec.n_speakers));
  }
  if (spec.n_mics < 1 || spec.n_mics > 64) {
    throw ConfigError("scene: n_mics must be in 1..64, got " +
                      std::to_string(spec.n_mics));
  }
  if (!(spec.duration_s >= 2.0)) {
    throw ConfigError("scene: duration must be at least 2 s, got " +
                      std::to_string(spec.duration_s));
  }
  if (!(spec.sample_rate > 0.0)) {
    throw ConfigError("scene: sample rate must be positive");
  }
  for (double t : spec.t60_s) {
    if (t < 0.0) {
      throw ConfigError("scene: t60 must be nonnegative, got " +
                        std::to_string(t));
    }
  }
  if (spec.overlap_s > spec.duration_s) {
    throw ConfigError("scene: infeasible spec, requested overlap " +
                      std::to_string(spec.overlap_s) +
                      " s exceeds duration " +
                      std::to_string(spec.duration_s) + " s");
  }
  if (spec.overlap_s > 0.0 && spec.n_speakers < 2) {
    throw ConfigError("scene: infeasible spec, overlap requires at least "
                      "two speakers");
  }
  resolve_per_mic(spec.t60_s, spec.n_mics, "t60_s");
  if (spec.snr_db.size() > 1 && spec.snr_db.size() != spec.n_speakers) {
    throw ConfigError("scene: snr_db has " +
                      std::to_string(spec.snr_db.size()) + " entries for " +
                      std::to_string(spec.n_speakers) + " speakers");
  }
  const auto groups = resolve_groups(spec);
  std::vector<int> seen(spec.n_mics, 0);
  for (const auto& g : groups) {
    for (std::size_t m : g.mics) {
      if (m >= spec.n_mics) {
        throw ConfigError("scene: mic group references mic " +
                          std::to_string(m) + " of " +
                          std::to_string(spec.n_mics));
      }
      ++seen[m];
    }
    if (g.delay_ms < 0.0) {
      throw ConfigError("scene: group delay must be nonnegative");
    }
  }
  for (std::size_t m = 0; m < spec.n_mics; ++m) {
    if (seen[m] != 1) {
      throw ConfigError("scene: mic groups must partition the mics; mic " +
                        std::to_string(m) + " appears " +
                        std::to_string(seen[m]) + " times");
    }
  }
}

audio::Waveform make_rir(double delay_ms, double t60_s, double sample_rate,
                         double length_s, std::uint64_t seed,
                         std::uint64_t stream) {
  if (t60_s < 0.0) {
    throw ConfigError("make_rir: t60 must be nonnegative, got " +
                      std::to_string(t60_s));
  }
  if (!(sample_rate > 0.0) || !(length_s > 0.0)) {
    throw ConfigError("make_rir: sample rate and length must be positive");
  }
  std::vector<double> draws;
  if (t60_s > 0.0) {
    const auto len =
        static_cast<std::size_t>(std::lround(length_s * sample_rate));
    CounterRng rng(seed, stream);
    draws.resize(len);
    for (double& d : draws) d = rng.normal();
  }
  return build_rir(delay_ms, t60_s, sample_rate, length_s, draws);
}

SceneTruth simulate_scene(const SceneSpec& spec) {
  validate(spec);
  const auto groups = resolve_groups(spec);
  const auto t60 = resolve_per_mic(spec.t60_s, spec.n_mics, "t60_s");
  const auto len =
      static_cast<std::size_t>(std::lround(spec.duration_s *
                                           spec.sample_rate));
  const bool with_noise = !spec.snr_db.empty();
  std::vector<double> snr(spec.n_speakers, 0.0);
  if (with_noise) {
    snr = spec.snr_db.size() == 1
              ? std::vector<double>(spec.n_speakers, spec.snr_db[0])
              : spec.snr_db;
  }

  SceneTruth truth;
  truth.spec = spec;
  truth.stft_config = audio::StftConfig{};
  truth.true_count = spec.n_speakers;
  truth.segments = generate_activity(spec);

  // Mic geometry: group base delay plus one sample per capsule.
  std::vector<std::size_t> group_of(spec.n_mics, 0);
  std::vector<double> mic_delay_ms(spec.n_mics, 0.0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t k = 0; k < groups[g].mics.size(); ++k) {
      const std::size_t m = groups[g].mics[k];
      group_of[m] = g;
      mic_delay_ms[m] = groups[g].delay_ms +
                        static_cast<double>(k) * 1000.0 / spec.sample_rate;
    }
  }

  // Per-speaker dry sources, then reverberated images at every mic. RIR
  // tails are drawn once per (speaker, group) so capsules of one device
  // share their reverberation.
  truth.images.resize(spec.n_speakers);
  truth.rirs.resize(spec.n_speakers);
  std::vector<double> image_energy_mic0(spec.n_speakers, 0.0);
  for (std::size_t s = 0; s < spec.n_speakers; ++s) {
    const auto gate = gate_for(truth.segments, speaker_name(s), len,
                               spec.sample_rate);
    const auto dry = synthesize_source(spec, s, gate);
    Convolver conv;
    conv.signal = &dry;

    std::vector<std::vector<double>> tail_draws(groups.size());
    truth.rirs[s].resize(spec.n_mics);
    truth.images[s].sample_rate = spec.sample_rate;
    truth.images[s].session_id = spec.session_id + "-" + speaker_name(s);
    truth.images[s].channels.resize(spec.n_mics);
    for (std::size_t m = 0; m < spec.n_mics; ++m) {
      const std::size_t g = group_of[m];
      const double rir_len_s =
          mic_delay_ms[m] / 1000.0 +
          (t60[m] > 0.0 ? t60[m] + 0.02 : 1.0 / spec.sample_rate);
      const auto rir_len = static_cast<std::size_t>(
          std::lround(rir_len_s * spec.sample_rate));
      if (t60[m] > 0.0 && tail_draws[g].size() < rir_len) {
        CounterRng rng(spec.seed, kStreamRirTail + s * 64 + g);
        tail_draws[g].resize(rir_len);
        for (double& d : tail_draws[g]) d = rng.normal();
      }
      truth.rirs[s][m] = build_rir(mic_delay_ms[m], t60[m],
                                   spec.sample_rate, rir_len_s,
                                   tail_draws[g]);
      auto& chan = truth.images[s].channels[m];
      chan.sample_rate = spec.sample_rate;
      chan.channel_id = channel_name(m);
      chan.samples = conv.run(truth.rirs[s][m].samples, len);
    }
    image_energy_mic0[s] = signal_energy(truth.images[s].channels[0].samples);
    if (image_energy_mic0[s] <= 0.0) {
      throw DataError("scene: " + speaker_name(s) +
                      " produced a silent image");
    }
  }

  // Diffuse noise: one shared stream per group plus a per-capsule
  // component, so noise is strongly correlated inside a device and
  // independent across devices.
  if (with_noise) {
    truth.noise.sample_rate = spec.sample_rate;
    truth.noise.session_id = spec.session_id + "-noise";
    truth.noise.channels.resize(spec.n_mics);
    std::vector<std::vector<double>> group_noise(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
      CounterRng rng(spec.seed, kStreamNoiseGroup + g);
      group_noise[g].resize(len);
      for (double& v : group_noise[g]) v = rng.normal();
    }
    const double shared = std::sqrt(0.8);
    for (std::size_t m = 0; m < spec.n_mics; ++m) {
      CounterRng rng(spec.seed, kStreamNoiseMic + m);
      auto& chan = truth.noise.channels[m];
      chan.sample_rate = spec.sample_rate;
      chan.channel_id = channel_name(m);
      chan.samples.resize(len);
      for (std::size_t i = 0; i < len; ++i) {
        chan.samples[i] = kNoiseLevel * (shared * group_noise[group_of[m]][i] +
                                         std::sqrt(0.2) * rng.normal());
      }
    }
  }

  // Source gains realize the requested SNR at mic 0, then everything is
  // scaled together to a 0.9 peak so the truth stays consistent.
  std::vector<double> gain(spec.n_speakers, 1.0);
  if (with_noise) {
    const double noise_energy =
        signal_energy(truth.noise.channels[0].samples);
    for (std::size_t s = 0; s < spec.n_speakers; ++s) {
      gain[s] = std::pow(10.0, snr[s] / 20.0) *
                std::sqrt(noise_energy / image_energy_mic0[s]);
    }
  }

  truth.mixture.sample_rate = spec.sample_rate;
  truth.mixture.session_id = spec.session_id;
  truth.mixture.channels.resize(spec.n_mics);
  double peak = 0.0;
  for (std::size_t m = 0; m < spec.n_mics; ++m) {
    auto& chan = truth.mixture.channels[m];
    chan.sample_rate = spec.sample_rate;
    chan.channel_id = channel_name(m);
    chan.samples.assign(len, 0.0);
    for (std::size_t s = 0; s < spec.n_speakers; ++s) {
      const auto& img = truth.images[s].channels[m].samples;
      for (std::size_t i = 0; i < len; ++i) {
        chan.samples[i] += gain[s] * img[i];
      }
    }
    if (with_noise) {
      const auto& nz = truth.noise.channels[m].samples;
      for (std::size_t i = 0; i < len; ++i) chan.samples[i] += nz[i];
    }
    for (double v : chan.samples) peak = std::max(peak, std::abs(v));
  }
  const double scale = peak > 0.0 ? kPeakTarget / peak : 1.0;
  for (std::size_t m = 0; m < spec.n_mics; ++m) {
    for (double& v : truth.mixture.channels[m].samples) v *= scale;
    if (with_noise) {
      for (double& v : truth.noise.channels[m].samples) v *= scale;
    }
    for (std::size_t s = 0; s < spec.n_speakers; ++s) {
      auto& img = truth.images[s].channels[m].samples;
      for (double& v : img) v *= gain[s] * scale;
    }
  }

  // Oracle masks at mic 0: target magnitude over target-plus-rest.
  const auto mix_spec = audio::stft(truth.mixture.channels[0],
                                    truth.stft_config);
  for (std::size_t s = 0; s < spec.n_speakers; ++s) {
    const auto img_spec = audio::stft(truth.images[s].channels[0],
                                      truth.stft_config);
    beamform::TfMask mask(mix_spec.num_frames(), mix_spec.num_bins(),
                          beamform::MaskRole::kTarget);
    for (std::size_t t = 0; t < mix_spec.num_frames(); ++t) {
      for (std::size_t f = 0; f < mix_spec.num_bins(); ++f) {
        const double a = std::abs(img_spec.at(t, f, 0));
        const double b = std::abs(mix_spec.at(t, f, 0) -
                                  img_spec.at(t, f, 0));
        const double denom = a + b;
        double v = denom > 0.0 ? a / denom : 0.0;
        mask.at(t, f) = std::clamp(v, 0.0, 1.0);
      }
    }
    truth.noise_masks.push_back(beamform::complement_mask(mask));
    truth.target_masks.push_back(std::move(mask));
  }
  return truth;
}

std::string write_scene(const SceneTruth& truth, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "refs");
  fs::create_directories(fs::path(dir) / "masks");

  nlohmann::json manifest;
  manifest["session"] = truth.spec.session_id;
  manifest["seed"] = truth.spec.seed;
  manifest["n_speakers"] = truth.spec.n_speakers;
  manifest["n_mics"] = truth.spec.n_mics;
  manifest["sample_rate"] = truth.spec.sample_rate;
  manifest["duration_s"] = truth.spec.duration_s;
  manifest["true_count"] = truth.true_count;
  manifest["stft"] = {{"frame_len", truth.stft_config.frame_len},
                      {"hop", truth.stft_config.hop}};
  manifest["rttm"] = "ref.rttm";

  auto channels = nlohmann::json::array();
  for (std::size_t m = 0; m < truth.mixture.channels.size(); ++m) {
    const std::string name = channel_name(m) + ".wav";
    audio::write_wav((fs::path(dir) / name).string(),
                     {truth.mixture.channels[m].samples},
                     truth.mixture.sample_rate);
    channels.push_back(name);
  }
  manifest["channels"] = std::move(channels);

  auto speakers = nlohmann::json::array();
  for (std::size_t s = 0; s < truth.images.size(); ++s) {
    const std::string name = speaker_name(s);
    const std::string ref = "refs/" + name + ".wav";
    const std::string target = "masks/" + name + ".target.msk";
    const std::string noise = "masks/" + name + ".noise.msk";
    audio::write_wav((fs::path(dir) / ref).string(),
                     {truth.images[s].channels[0].samples},
                     truth.mixture.sample_rate);
    beamform::write_mask((fs::path(dir) / target).string(),
                         truth.target_masks[s]);
    beamform::write_mask((fs::path(dir) / noise).string(),
                         truth.noise_masks[s]);
    speakers.push_back({{"id", name},
                        {"reference", ref},
                        {"target_mask", target},
                        {"noise_mask", noise}});
  }
  manifest["speakers"] = std::move(speakers);

  std::ofstream rttm(fs::path(dir) / "ref.rttm",
                     std::ios::binary | std::ios::trunc);
  for (const auto& seg : truth.segments) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "SPEAKER %s 1 %.3f %.3f <NA> <NA> %s <NA> <NA>\n",
                  truth.spec.session_id.c_str(), seg.start_s, seg.dur_s,
                  seg.speaker.c_str());
    rttm << line;
  }
  rttm.close();

  const std::string manifest_path = (fs::path(dir) / "manifest.json").string();
  std::ofstream mf(manifest_path, std::ios::binary | std::ios::trunc);
  mf << manifest.dump(2) << "\n";
  if (!mf) {
    throw DataError("scene: failed writing manifest to " + manifest_path);
  }
  return manifest_path;
}

}  // namespace mcfront::sim
