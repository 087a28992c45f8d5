// tools/src/commands.cc
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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "json_util.h"
#include "mcfront/audio/stft.h"
#include "mcfront/audio/wav_io.h"
#include "mcfront/audio/waveform.h"
#include "mcfront/beamform/spmwf.h"
#include "mcfront/beamform/tf_mask.h"
#include "mcfront/chansel/c50.h"
#include "mcfront/chansel/envelope_variance.h"
#include "mcfront/chansel/selection.h"
#include "mcfront/common/error.h"
#include "mcfront/counting/aggregate.h"
#include "mcfront/counting/cluster.h"
#include "mcfront/counting/correlation.h"
#include "mcfront/counting/embedding_io.h"
#include "mcfront/counting/nmesc.h"
#include "mcfront/score/der.h"
#include "mcfront/score/segmentation.h"
#include "mcfront/sim/scene.h"
#include "pipeline_config.h"

namespace mcfront::tools {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// One session's share of a command run: the machine-readable record and the
// one-line human summary. Output is assembled after every session finished,
// in input order, so --jobs never reorders it.
struct SessionReport {
  json record;
  std::string human;
};

template <typename Work>
std::vector<SessionReport> run_sessions(const std::vector<std::string>& dirs,
                                        std::size_t jobs, Work&& work) {
  std::vector<SessionReport> reports(dirs.size());
  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min(jobs, dirs.size()));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < dirs.size(); ++i) reports[i] = work(dirs[i]);
    return reports;
  }
  std::vector<std::exception_ptr> errors(dirs.size());
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= dirs.size()) return;
      try {
        reports[i] = work(dirs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  // Rethrow the error of the earliest failing session so the reported
  // failure does not depend on thread scheduling.
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

void emit(const std::vector<SessionReport>& reports, bool json_out) {
  if (json_out) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.record);
    std::cout << arr.dump(2) << "\n";
    return;
  }
  for (const auto& r : reports) std::cout << r.human << "\n";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw DataError("failed while writing " + path.string());
}

std::string dir_basename(const std::string& dir) {
  fs::path p(dir);
  if (p.filename().empty()) p = p.parent_path();
  const std::string base = p.filename().string();
  return base.empty() ? dir : base;
}

// The session id comes from manifest.json when one is present and parses;
// otherwise the directory name stands in. Recording ids must match RTTM
// session fields, so this is the one place the mapping is decided.
std::string session_name(const std::string& dir) {
  const fs::path manifest = fs::path(dir) / "manifest.json";
  std::ifstream in(manifest);
  if (in) {
    try {
      json j;
      in >> j;
      if (j.contains("session") && j["session"].is_string()) {
        return j["session"].get<std::string>();
      }
    } catch (const json::exception&) {
      // Fall through to the directory name; a broken manifest should not
      // block commands that never needed it.
    }
  }
  return dir_basename(dir);
}

std::vector<fs::path> channel_files(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw DataError("session directory " + dir + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.rfind("ch-", 0) == 0 && entry.path().extension() == ".wav") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw DataError("no ch-*.wav channels in " + dir);
  }
  return files;
}

audio::MultichannelRecording load_session_audio(const std::string& dir) {
  audio::MultichannelRecording rec;
  rec.session_id = session_name(dir);
  for (const auto& path : channel_files(dir)) {
    audio::WavData wav = audio::read_wav(path.string());
    if (wav.channels.size() != 1) {
      throw DataError("channel file " + path.string() + " must be mono, has " +
                      std::to_string(wav.channels.size()) + " channels");
    }
    if (!rec.channels.empty() && wav.sample_rate != rec.sample_rate) {
      throw DataError("mixed sample rates in " + dir + ": " +
                      path.filename().string() + " is at " +
                      std::to_string(wav.sample_rate) + " Hz");
    }
    audio::Waveform w;
    w.samples = std::move(wav.channels[0]);
    w.sample_rate = wav.sample_rate;
    w.channel_id = path.stem().string();
    rec.sample_rate = wav.sample_rate;
    rec.channels.push_back(std::move(w));
  }
  audio::validate(rec);
  return rec;
}

// EV for every channel, plus C50 when a score file is available: an explicit
// config path first, else <dir>/c50.json. With neither, selection degrades
// to the EV-only branches.
std::vector<chansel::ChannelScore> score_channels(
    const audio::MultichannelRecording& rec, const std::string& dir,
    const PipelineConfig& cfg, bool* have_c50_out) {
  std::string c50_path = cfg.c50_path;
  if (c50_path.empty()) {
    const fs::path candidate = fs::path(dir) / "c50.json";
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec)) c50_path = candidate.string();
  }
  std::map<std::string, double> c50;
  bool have_c50 = false;
  if (cfg.selection.use_c50 && !c50_path.empty()) {
    c50 = chansel::read_c50_json(c50_path);
    have_c50 = true;
  }
  std::vector<chansel::ChannelScore> scores;
  scores.reserve(rec.channels.size());
  for (const auto& ch : rec.channels) {
    chansel::ChannelScore s;
    s.channel_id = ch.channel_id;
    s.ev = chansel::envelope_variance(ch);
    if (have_c50) {
      const auto it = c50.find(ch.channel_id);
      if (it == c50.end()) {
        throw DataError("C50 file " + c50_path + " has no entry for channel " +
                        ch.channel_id);
      }
      s.c50_db = it->second;
    }
    scores.push_back(std::move(s));
  }
  if (have_c50_out) *have_c50_out = have_c50;
  return scores;
}

chansel::SelectionResult select_for_session(
    const audio::MultichannelRecording& rec, const std::string& dir,
    const PipelineConfig& cfg) {
  bool have_c50 = false;
  const auto scores = score_channels(rec, dir, cfg, &have_c50);
  chansel::SelectionPolicy policy = cfg.selection;
  policy.use_c50 = policy.use_c50 && have_c50;
  return chansel::select_subset(scores, policy);
}

sim::SceneSpec parse_scene_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scene spec " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw ConfigError("scene spec " + path + " is not valid JSON: " +
                      e.what());
  }
  const std::string where = "scene spec " + path;
  check_keys(root, where,
             {"seed", "n_speakers", "n_mics", "mic_groups", "t60_s", "snr_db",
              "overlap_s", "duration_s", "sample_rate", "session_id"});
  sim::SceneSpec spec;
  read_into(root, "seed", where, spec.seed);
  read_into(root, "n_speakers", where, spec.n_speakers);
  read_into(root, "n_mics", where, spec.n_mics);
  read_into(root, "overlap_s", where, spec.overlap_s);
  read_into(root, "duration_s", where, spec.duration_s);
  read_into(root, "sample_rate", where, spec.sample_rate);
  read_into(root, "session_id", where, spec.session_id);
  auto read_broadcast = [&](const char* key, std::vector<double>& out) {
    if (!root.contains(key)) return;
    const json& v = root.at(key);
    if (v.is_number()) {
      out = {v.get<double>()};
    } else if (v.is_array()) {
      try {
        out = v.get<std::vector<double>>();
      } catch (const json::exception&) {
        throw ConfigError("config: bad value for '" + std::string(key) +
                          "' in " + where);
      }
    } else {
      throw ConfigError("config: '" + std::string(key) + "' in " + where +
                        " must be a number or an array of numbers");
    }
  };
  read_broadcast("t60_s", spec.t60_s);
  read_broadcast("snr_db", spec.snr_db);
  if (root.contains("mic_groups")) {
    if (!root["mic_groups"].is_array()) {
      throw ConfigError("config: 'mic_groups' in " + where +
                        " must be an array");
    }
    for (const auto& g : root["mic_groups"]) {
      check_keys(g, "mic_groups entry", {"mics", "delay_ms"});
      sim::MicGroup group;
      read_into(g, "mics", "mic_groups entry", group.mics);
      read_into(g, "delay_ms", "mic_groups entry", group.delay_ms);
      spec.mic_groups.push_back(std::move(group));
    }
  }
  return spec;
}

counting::EmbeddingSet load_embeddings_for(const std::string& dir,
                                           const PipelineConfig& cfg) {
  const std::string root = cfg.embeddings_path.empty()
                               ? (fs::path(dir) / "emb").string()
                               : cfg.embeddings_path;
  std::vector<std::string> files;
  std::error_code ec;
  if (fs::is_directory(root, ec)) {
    for (const auto& entry : fs::directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().extension() == ".emb") {
        files.push_back(entry.path().string());
      }
    }
    std::sort(files.begin(), files.end());
  } else if (fs::is_regular_file(root, ec)) {
    files.push_back(root);
  }
  if (files.empty()) {
    throw DataError("no embeddings found under " + root);
  }
  counting::EmbeddingSet all;
  for (const auto& f : files) {
    counting::EmbeddingSet part = counting::read_embeddings(f);
    if (all.vectors.empty()) {
      all = std::move(part);
      continue;
    }
    if (part.dim != all.dim) {
      throw DataError("embedding dimension mismatch: " + f + " has dim " +
                      std::to_string(part.dim) + ", expected " +
                      std::to_string(all.dim));
    }
    all.vectors.insert(all.vectors.end(),
                       std::make_move_iterator(part.vectors.begin()),
                       std::make_move_iterator(part.vectors.end()));
    all.spans.insert(all.spans.end(), part.spans.begin(), part.spans.end());
    all.channel_ids.insert(all.channel_ids.end(),
                           std::make_move_iterator(part.channel_ids.begin()),
                           std::make_move_iterator(part.channel_ids.end()));
  }
  return all;
}

// Frame-center time of STFT frame t under the fading-pad layout: the first
// frame starts frame_len - hop samples before the signal.
double frame_center_s(std::size_t t, const audio::StftConfig& cfg,
                      double sample_rate) {
  const double center =
      (static_cast<double>((t + 1) * cfg.hop) -
       static_cast<double>(cfg.frame_len) / 2.0) /
      sample_rate;
  return std::max(0.0, center);
}

using SpeakerSpans = std::map<std::string, std::vector<std::pair<double, double>>>;

SpeakerSpans merged_speaker_spans(const score::SegmentationHypothesis& hyp) {
  std::map<std::string, std::vector<std::pair<double, double>>> raw;
  for (const auto& seg : hyp.segments) {
    raw[seg.speaker].emplace_back(seg.start_s, seg.end_s);
  }
  SpeakerSpans merged;
  for (auto& [speaker, spans] : raw) {
    std::sort(spans.begin(), spans.end());
    std::vector<std::pair<double, double>> out;
    for (const auto& [b, e] : spans) {
      if (!out.empty() && b <= out.back().second) {
        out.back().second = std::max(out.back().second, e);
      } else {
        out.emplace_back(b, e);
      }
    }
    merged[speaker] = std::move(out);
  }
  return merged;
}

bool in_spans(const std::vector<std::pair<double, double>>& spans, double t) {
  for (const auto& [b, e] : spans) {
    if (t >= b && t < e) return true;
  }
  return false;
}

}  // namespace

void cmd_simulate(const std::string& spec_path, const std::string& out_dir,
                  std::optional<std::uint64_t> seed_override, bool json_out) {
  sim::SceneSpec spec = parse_scene_spec(spec_path);
  if (seed_override) spec.seed = *seed_override;
  const sim::SceneTruth truth = sim::simulate_scene(spec);
  const std::string manifest = sim::write_scene(truth, out_dir);
  if (json_out) {
    json j{{"session", truth.spec.session_id},
           {"out_dir", out_dir},
           {"manifest", manifest},
           {"seed", truth.spec.seed},
           {"n_mics", truth.spec.n_mics},
           {"true_count", truth.true_count},
           {"duration_s", truth.spec.duration_s}};
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "simulated " << truth.spec.session_id << " into " << out_dir
            << " (" << truth.spec.n_mics << " mics, " << truth.true_count
            << " speakers, seed " << truth.spec.seed << ")\n";
}

void cmd_micsel(const std::vector<std::string>& sessions,
                const PipelineConfig& cfg, bool json_out, std::size_t jobs) {
  auto reports = run_sessions(sessions, jobs, [&](const std::string& dir) {
    const audio::MultichannelRecording rec = load_session_audio(dir);
    const chansel::SelectionResult sel = select_for_session(rec, dir, cfg);
    const std::string payload = chansel::to_json(sel);
    write_text(fs::path(dir) / "selection.json", payload + "\n");
    SessionReport report;
    report.record = json::parse(payload);
    report.record["session"] = rec.session_id;
    report.record["session_dir"] = dir;
    std::ostringstream line;
    line << rec.session_id << ": kept " << sel.selected.size() << "/"
         << rec.channels.size() << " channels (branch "
         << chansel::branch_name(sel.rule_branch) << ")";
    report.human = line.str();
    return report;
  });
  emit(reports, json_out);
}

void cmd_count(const std::vector<std::string>& sessions,
               const PipelineConfig& cfg, bool json_out, std::size_t jobs) {
  auto reports = run_sessions(sessions, jobs, [&](const std::string& dir) {
    const audio::MultichannelRecording rec = load_session_audio(dir);
    const counting::EmbeddingSet emb = load_embeddings_for(dir, cfg);

    std::set<std::string> known;
    for (const auto& ch : rec.channels) known.insert(ch.channel_id);
    for (const auto& id : emb.channel_ids) {
      if (!known.count(id)) {
        throw DataError("embedding channel '" + id +
                        "' is not a session channel in " + dir);
      }
    }

    std::vector<std::vector<std::size_t>> groups;
    if (rec.channels.size() >= 2) {
      const auto corr = counting::channel_correlation(rec, cfg.correlation);
      groups = counting::cluster_channels(corr, cfg.corr_threshold).groups;
    } else {
      groups = {{0}};
    }

    counting::CountEstimate est;
    json group_channels = json::array();
    for (std::size_t g = 0; g < groups.size(); ++g) {
      std::set<std::string> ids;
      for (const std::size_t m : groups[g]) {
        ids.insert(rec.channels[m].channel_id);
      }
      group_channels.push_back(json(std::vector<std::string>(ids.begin(),
                                                             ids.end())));
      counting::EmbeddingSet pool;
      pool.dim = emb.dim;
      for (std::size_t i = 0; i < emb.size(); ++i) {
        if (!ids.count(emb.channel_ids[i])) continue;
        pool.vectors.push_back(emb.vectors[i]);
        pool.spans.push_back(emb.spans[i]);
        pool.channel_ids.push_back(emb.channel_ids[i]);
      }
      if (pool.vectors.empty()) continue;
      const counting::EmbeddingSet reseg =
          counting::resegment_embeddings(pool, cfg.seg_len_s);
      counting::GroupCount gc;
      gc.group_index = g;
      gc.count = counting::nmesc_count(reseg, cfg.max_speakers).count;
      gc.n_embeddings = reseg.size();
      est.per_group.push_back(gc);
      est.total_embeddings += gc.n_embeddings;
    }
    if (est.per_group.empty()) {
      throw DataError("no channel group has embeddings in " + dir);
    }
    est.session_count = counting::aggregate_counts(est.per_group);

    const std::string payload = counting::to_json(est);
    write_text(fs::path(dir) / "count.json", payload + "\n");
    SessionReport report;
    report.record = json::parse(payload);
    report.record["session"] = rec.session_id;
    report.record["session_dir"] = dir;
    report.record["group_channels"] = group_channels;
    std::ostringstream line;
    line << rec.session_id << ": " << est.session_count << " speakers ("
         << est.per_group.size() << " groups, " << est.total_embeddings
         << " embeddings)";
    report.human = line.str();
    return report;
  });
  emit(reports, json_out);
}

void cmd_enhance(const std::vector<std::string>& sessions,
                 const PipelineConfig& cfg, const std::string& segments_path,
                 bool json_out, std::size_t jobs) {
  // The segments file is shared across sessions; parse it once up front so a
  // malformed file fails before any session starts writing.
  std::vector<score::SegmentationHypothesis> segment_sessions;
  if (!segments_path.empty()) {
    segment_sessions = score::read_rttm(segments_path);
  }

  auto reports = run_sessions(sessions, jobs, [&](const std::string& dir) {
    const audio::MultichannelRecording rec = load_session_audio(dir);
    const chansel::SelectionResult sel = select_for_session(rec, dir, cfg);

    std::map<std::string, std::size_t> index_by_id;
    for (std::size_t i = 0; i < rec.channels.size(); ++i) {
      index_by_id[rec.channels[i].channel_id] = i;
    }
    audio::MultichannelRecording sub;
    sub.sample_rate = rec.sample_rate;
    sub.session_id = rec.session_id;
    for (const auto& id : sel.selected) {
      sub.channels.push_back(rec.channels[index_by_id.at(id)]);
    }

    const audio::Spectrogram spec = audio::stft(sub, cfg.stft);

    SpeakerSpans spans;
    if (!segments_path.empty()) {
      const auto it = std::find_if(
          segment_sessions.begin(), segment_sessions.end(),
          [&](const auto& h) { return h.session_id == rec.session_id; });
      if (it == segment_sessions.end()) {
        throw DataError("segments file " + segments_path +
                        " has no session " + rec.session_id);
      }
      spans = merged_speaker_spans(*it);
    }

    const fs::path mask_dir =
        cfg.masks_path.empty() ? fs::path(dir) / "masks" : fs::path(cfg.masks_path);
    std::error_code ec;
    if (!fs::is_directory(mask_dir, ec)) {
      throw DataError("mask directory " + mask_dir.string() + " not found");
    }
    const std::string suffix = ".target.msk";
    std::vector<std::pair<std::string, fs::path>> speakers;
    for (const auto& entry : fs::directory_iterator(mask_dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string name = entry.path().filename().string();
      if (name.size() > suffix.size() &&
          name.compare(name.size() - suffix.size(), suffix.size(), suffix) ==
              0) {
        speakers.emplace_back(name.substr(0, name.size() - suffix.size()),
                              entry.path());
      }
    }
    std::sort(speakers.begin(), speakers.end());
    if (speakers.empty()) {
      throw DataError("no *.target.msk masks in " + mask_dir.string());
    }

    const fs::path out_dir = fs::path(dir) / "enhanced";
    fs::create_directories(out_dir);

    SessionReport report;
    json spk_records = json::array();
    std::ostringstream line;
    line << rec.session_id << ": " << sub.channels.size() << " channels ("
         << chansel::branch_name(sel.rule_branch) << ")";
    for (const auto& [speaker, target_path] : speakers) {
      const beamform::TfMask target =
          beamform::read_mask(target_path.string(), beamform::MaskRole::kTarget);
      if (target.frames != spec.num_frames() ||
          target.bins != spec.num_bins()) {
        throw DataError("mask " + target_path.string() + " is " +
                        std::to_string(target.frames) + "x" +
                        std::to_string(target.bins) +
                        " but the session spectrogram is " +
                        std::to_string(spec.num_frames()) + "x" +
                        std::to_string(spec.num_bins()));
      }
      fs::path noise_path = target_path;
      noise_path.replace_filename(speaker + ".noise.msk");
      const beamform::TfMask noise =
          fs::is_regular_file(noise_path, ec)
              ? beamform::read_mask(noise_path.string(),
                                    beamform::MaskRole::kNoise)
              : beamform::complement_mask(target);

      beamform::TfMask gated = target;
      std::size_t gated_frames = 0;
      if (!segments_path.empty()) {
        const auto it = spans.find(speaker);
        if (it == spans.end()) {
          throw DataError("segments file " + segments_path +
                          " has no speaker " + speaker + " in session " +
                          rec.session_id);
        }
        for (std::size_t t = 0; t < gated.frames; ++t) {
          if (in_spans(it->second,
                       frame_center_s(t, cfg.stft, rec.sample_rate))) {
            continue;
          }
          for (std::size_t f = 0; f < gated.bins; ++f) gated.at(t, f) = 0.0f;
          ++gated_frames;
        }
      }

      const beamform::CovariancePair cov =
          beamform::estimate_covariances(spec, gated, noise);
      const std::size_t ref = beamform::select_reference(cov);
      const beamform::FilterBank fb =
          beamform::spmwf_weights(cov, ref, cfg.mu, cfg.diag_loading);
      audio::Spectrogram out_spec = beamform::apply_filter(spec, fb);
      out_spec = beamform::mask_postfilter(out_spec, target, cfg.mask_floor);
      const audio::Waveform wave = audio::istft(out_spec);

      const fs::path out_path = out_dir / (speaker + ".wav");
      audio::write_wav(out_path.string(), {wave.samples}, rec.sample_rate);

      json rec_j{{"speaker", speaker},
                 {"output", out_path.string()},
                 {"reference_channel", sub.channels[ref].channel_id},
                 {"zeroed_bins", fb.zeroed_bins.size()}};
      if (!segments_path.empty()) rec_j["gated_frames"] = gated_frames;
      spk_records.push_back(std::move(rec_j));
      line << " " << speaker << "->" << sub.channels[ref].channel_id;
    }

    report.record = json{{"session", rec.session_id},
                         {"session_dir", dir},
                         {"selection", json::parse(chansel::to_json(sel))},
                         {"speakers", spk_records}};
    write_text(fs::path(dir) / "enhance.json", report.record.dump(2) + "\n");
    report.human = line.str();
    return report;
  });
  emit(reports, json_out);
}

void cmd_score(const std::string& ref_path, const std::string& hyp_path,
               double collar_s, bool json_out) {
  const auto refs = score::read_rttm(ref_path);
  const auto hyps = score::read_rttm(hyp_path);
  if (refs.empty()) throw DataError("reference " + ref_path + " is empty");

  auto find_session = [](const std::vector<score::SegmentationHypothesis>& v,
                         const std::string& id)
      -> const score::SegmentationHypothesis* {
    for (const auto& h : v) {
      if (h.session_id == id) return &h;
    }
    return nullptr;
  };
  for (const auto& h : hyps) {
    if (!find_session(refs, h.session_id)) {
      throw DataError("hypothesis session " + h.session_id +
                      " is missing from the reference " + ref_path);
    }
  }

  json sessions = json::array();
  score::DerBreakdown total;
  std::ostringstream human;
  for (const auto& ref : refs) {
    const auto* hyp = find_session(hyps, ref.session_id);
    score::SegmentationHypothesis empty_hyp;
    empty_hyp.session_id = ref.session_id;
    const score::DerBreakdown b =
        score::der(ref, hyp ? *hyp : empty_hyp, collar_s);
    total.missed_s += b.missed_s;
    total.falarm_s += b.falarm_s;
    total.confusion_s += b.confusion_s;
    total.scored_speech_s += b.scored_speech_s;
    sessions.push_back(json{{"session", ref.session_id},
                            {"der", b.der},
                            {"missed_s", b.missed_s},
                            {"falarm_s", b.falarm_s},
                            {"confusion_s", b.confusion_s},
                            {"scored_speech_s", b.scored_speech_s}});
    human << ref.session_id << ": DER " << b.der << " (miss " << b.missed_s
          << " s, fa " << b.falarm_s << " s, conf " << b.confusion_s
          << " s over " << b.scored_speech_s << " s)\n";
  }
  if (!(total.scored_speech_s > 0.0)) {
    throw DataError("nothing to score across " + ref_path);
  }
  total.der = (total.missed_s + total.falarm_s + total.confusion_s) /
              total.scored_speech_s;
  if (json_out) {
    json j{{"collar", collar_s},
           {"sessions", sessions},
           {"overall",
            json{{"der", total.der},
                 {"missed_s", total.missed_s},
                 {"falarm_s", total.falarm_s},
                 {"confusion_s", total.confusion_s},
                 {"scored_speech_s", total.scored_speech_s}}}};
    std::cout << j.dump(2) << "\n";
    return;
  }
  human << "overall: DER " << total.der << " over " << total.scored_speech_s
        << " s\n";
  std::cout << human.str();
}

}  // namespace mcfront::tools
