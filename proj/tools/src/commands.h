// tools/src/commands.h
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

#ifndef MCFRONT_TOOLS_COMMANDS_H_
#define MCFRONT_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pipeline_config.h"

namespace mcfront::tools {

// Every command prints its result to stdout (a single JSON document with
// json_out, human-readable lines otherwise), writes its artifacts into the
// session directories, and throws ConfigError or DataError on failure; the
// caller maps those to exit codes 2 and 3.

void cmd_simulate(const std::string& spec_path, const std::string& out_dir,
                  std::optional<std::uint64_t> seed_override, bool json_out);

void cmd_micsel(const std::vector<std::string>& sessions,
                const PipelineConfig& cfg, bool json_out, std::size_t jobs);

void cmd_count(const std::vector<std::string>& sessions,
               const PipelineConfig& cfg, bool json_out, std::size_t jobs);

void cmd_enhance(const std::vector<std::string>& sessions,
                 const PipelineConfig& cfg, const std::string& segments_path,
                 bool json_out, std::size_t jobs);

void cmd_score(const std::string& ref_path, const std::string& hyp_path,
               double collar_s, bool json_out);

}  // namespace mcfront::tools

#endif  // MCFRONT_TOOLS_COMMANDS_H_
