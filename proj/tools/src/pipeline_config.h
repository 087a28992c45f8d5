// tools/src/pipeline_config.h
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

#ifndef MCFRONT_TOOLS_PIPELINE_CONFIG_H_
#define MCFRONT_TOOLS_PIPELINE_CONFIG_H_

#include <cstddef>
#include <string>

#include "mcfront/audio/stft.h"
#include "mcfront/chansel/selection.h"
#include "mcfront/counting/correlation.h"

namespace mcfront::tools {

// Everything a pipeline run can tune, with the module defaults filled in.
// Loaded from a JSON file of the shape
//
//   {
//     "stft":      {"frame_len": 1024, "hop": 256, "window": "hann"},
//     "selection": {"k_pct": 0.65, "min_mics": 15, "use_c50": true},
//     "counting":  {"window_s": 120.0, "max_lag_ms": 100.0,
//                   "corr_threshold": 0.3, "seg_len_s": 15.0,
//                   "max_speakers": 8},
//     "beamform":  {"mu": 0.0, "mask_floor": 0.1, "diag_loading": 1e-6},
//     "paths":     {"c50": "...", "embeddings": "...", "masks": "..."}
//   }
//
// where every section and key is optional and unknown keys are rejected.
struct PipelineConfig {
  audio::StftConfig stft;
  chansel::SelectionPolicy selection;
  counting::CorrelationConfig correlation;
  double corr_threshold = 0.3;
  double seg_len_s = 15.0;
  std::size_t max_speakers = 8;
  double mu = 0.0;
  double mask_floor = 0.1;
  double diag_loading = 1e-6;
  std::string c50_path;
  std::string embeddings_path;
  std::string masks_path;
};

// Defaults when path is empty. Throws ConfigError on unreadable files,
// malformed JSON, unknown keys, or wrongly typed values.
PipelineConfig load_pipeline_config(const std::string& path);

}  // namespace mcfront::tools

#endif  // MCFRONT_TOOLS_PIPELINE_CONFIG_H_
