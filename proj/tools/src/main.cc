// tools/src/main.cc
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

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"
#include "mcfront/common/error.h"
#include "pipeline_config.h"

namespace {

// Exit codes: 0 success, 1 unexpected, 2 config error (bad flags, bad config
// file, infeasible request), 3 data error (missing or malformed inputs).
constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

}  // namespace

int main(int argc, char** argv) {
  using mcfront::tools::PipelineConfig;

  CLI::App app{"mcfront: multichannel distant-speech front-end toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  bool json_out = false;
  std::size_t jobs = 1;
  app.add_option("--config", config_path,
                 "Pipeline config JSON; omitted fields keep their defaults")
      ->check(CLI::ExistingFile);
  app.add_flag("--json", json_out, "Machine-parsable JSON on stdout");
  app.add_option("--jobs", jobs,
                 "Process up to N sessions in parallel (default 1)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}));

  auto* sim = app.add_subcommand(
      "simulate", "Render a synthetic scene from a scene-spec JSON");
  sim->fallthrough();
  std::string scene_spec;
  std::string scene_out;
  std::uint64_t seed = 0;
  sim->add_option("spec", scene_spec, "Scene-spec JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  sim->add_option("out_dir", scene_out, "Session directory to write")
      ->required();
  sim->add_option("--seed", seed, "Override the seed in the spec");

  auto* micsel = app.add_subcommand(
      "micsel", "Select a microphone subset per session");
  micsel->fallthrough();
  std::vector<std::string> micsel_sessions;
  std::size_t min_mics = 15;
  double k_pct = 0.65;
  micsel->add_option("sessions", micsel_sessions, "Session directories")
      ->required();
  micsel->add_option("--min-mics", min_mics,
                     "Floor below which rankings are not trusted");
  micsel->add_option("--k-pct", k_pct, "Shortlist fraction per ranking");

  auto* count = app.add_subcommand(
      "count", "Estimate the speaker count per session");
  count->fallthrough();
  std::vector<std::string> count_sessions;
  double corr_threshold = 0.3;
  std::size_t max_speakers = 8;
  std::string embeddings_path;
  count->add_option("sessions", count_sessions, "Session directories")
      ->required();
  count->add_option("--corr-threshold", corr_threshold,
                    "Channel clustering correlation threshold");
  count->add_option("--max-speakers", max_speakers,
                    "Upper bound on the per-group count");
  count->add_option("--embeddings", embeddings_path,
                    "Embedding file or directory (default <session>/emb)");

  auto* enhance = app.add_subcommand(
      "enhance", "Beamform each masked speaker to a WAV per session");
  enhance->fallthrough();
  std::vector<std::string> enhance_sessions;
  double mu = 0.0;
  std::string masks_path;
  std::string segments_path;
  enhance->add_option("sessions", enhance_sessions, "Session directories")
      ->required();
  enhance->add_option("--mu", mu, "Speech-distortion tradeoff (0 = MVDR-like)");
  enhance->add_option("--masks", masks_path,
                      "Mask directory (default <session>/masks)");
  enhance->add_option("--segments", segments_path,
                      "RTTM restricting each speaker's target frames")
      ->check(CLI::ExistingFile);

  auto* score = app.add_subcommand(
      "score", "Diarization error rate of a hypothesis RTTM");
  score->fallthrough();
  std::string ref_path;
  std::string hyp_path;
  double collar = 0.25;
  score->add_option("ref", ref_path, "Reference RTTM")
      ->required()
      ->check(CLI::ExistingFile);
  score->add_option("hyp", hyp_path, "Hypothesis RTTM")
      ->required()
      ->check(CLI::ExistingFile);
  score->add_option("--collar", collar,
                    "No-score zone around reference boundaries, seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    PipelineConfig cfg = mcfront::tools::load_pipeline_config(config_path);
    if (micsel->count("--min-mics")) cfg.selection.min_mics = min_mics;
    if (micsel->count("--k-pct")) cfg.selection.k_pct = k_pct;
    if (count->count("--corr-threshold")) cfg.corr_threshold = corr_threshold;
    if (count->count("--max-speakers")) cfg.max_speakers = max_speakers;
    if (count->count("--embeddings")) cfg.embeddings_path = embeddings_path;
    if (enhance->count("--mu")) cfg.mu = mu;
    if (enhance->count("--masks")) cfg.masks_path = masks_path;

    if (*sim) {
      std::optional<std::uint64_t> seed_override;
      if (sim->count("--seed")) seed_override = seed;
      mcfront::tools::cmd_simulate(scene_spec, scene_out, seed_override,
                                   json_out);
    } else if (*micsel) {
      mcfront::tools::cmd_micsel(micsel_sessions, cfg, json_out, jobs);
    } else if (*count) {
      mcfront::tools::cmd_count(count_sessions, cfg, json_out, jobs);
    } else if (*enhance) {
      mcfront::tools::cmd_enhance(enhance_sessions, cfg, segments_path,
                                  json_out, jobs);
    } else if (*score) {
      mcfront::tools::cmd_score(ref_path, hyp_path, collar, json_out);
    }
  } catch (const mcfront::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mcfront::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnexpected;
  }
  return 0;
}
