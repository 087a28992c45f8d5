// tools/src/pipeline_config.cc
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

#include "pipeline_config.h"

#include <fstream>
#include <string>

#include "json.hpp"
#include "json_util.h"
#include "mcfront/common/error.h"

namespace mcfront::tools {

using nlohmann::json;

PipelineConfig load_pipeline_config(const std::string& path) {
  PipelineConfig cfg;
  if (path.empty()) return cfg;

  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw ConfigError("config: " + path + " is not valid JSON: " + e.what());
  }
  check_keys(root, path, {"stft", "selection", "counting", "beamform",
                          "paths"});

  if (root.contains("stft")) {
    const auto& s = root["stft"];
    check_keys(s, "stft", {"frame_len", "hop", "window"});
    read_into(s, "frame_len", "stft", cfg.stft.frame_len);
    read_into(s, "hop", "stft", cfg.stft.hop);
    if (s.contains("window")) {
      std::string w;
      read_into(s, "window", "stft", w);
      if (w == "hann") {
        cfg.stft.window = audio::Window::kHann;
      } else if (w == "sqrt_hann") {
        cfg.stft.window = audio::Window::kSqrtHann;
      } else {
        throw ConfigError("config: unknown stft window '" + w + "'");
      }
    }
  }
  if (root.contains("selection")) {
    const auto& s = root["selection"];
    check_keys(s, "selection", {"k_pct", "min_mics", "use_c50"});
    read_into(s, "k_pct", "selection", cfg.selection.k_pct);
    read_into(s, "min_mics", "selection", cfg.selection.min_mics);
    read_into(s, "use_c50", "selection", cfg.selection.use_c50);
  }
  if (root.contains("counting")) {
    const auto& s = root["counting"];
    check_keys(s, "counting", {"window_s", "max_lag_ms", "corr_threshold",
                               "seg_len_s", "max_speakers"});
    read_into(s, "window_s", "counting", cfg.correlation.window_s);
    read_into(s, "max_lag_ms", "counting", cfg.correlation.max_lag_ms);
    read_into(s, "corr_threshold", "counting", cfg.corr_threshold);
    read_into(s, "seg_len_s", "counting", cfg.seg_len_s);
    read_into(s, "max_speakers", "counting", cfg.max_speakers);
  }
  if (root.contains("beamform")) {
    const auto& s = root["beamform"];
    check_keys(s, "beamform", {"mu", "mask_floor", "diag_loading"});
    read_into(s, "mu", "beamform", cfg.mu);
    read_into(s, "mask_floor", "beamform", cfg.mask_floor);
    read_into(s, "diag_loading", "beamform", cfg.diag_loading);
  }
  if (root.contains("paths")) {
    const auto& s = root["paths"];
    check_keys(s, "paths", {"c50", "embeddings", "masks"});
    read_into(s, "c50", "paths", cfg.c50_path);
    read_into(s, "embeddings", "paths", cfg.embeddings_path);
    read_into(s, "masks", "paths", cfg.masks_path);
  }
  return cfg;
}

}  // namespace mcfront::tools
