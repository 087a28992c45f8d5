// core/src/chansel/c50.cc
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

#include "mcfront/chansel/c50.h"

#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "mcfront/common/error.h"

namespace mcfront::chansel {

double c50_from_rir(const audio::Waveform& rir) {
  audio::validate(rir);
  double peak = 0.0;
  for (double v : rir.samples) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) {
    throw DataError("c50: impulse response '" + rir.channel_id +
                    "' is all zeros");
  }

  std::size_t t0 = 0;
  while (std::abs(rir.samples[t0]) < 0.01 * peak) ++t0;

  const auto n50 =
      static_cast<std::size_t>(std::lround(0.050 * rir.sample_rate));
  const std::size_t split = t0 + n50;

  double early = 0.0, late = 0.0;
  for (std::size_t t = 0; t < rir.samples.size(); ++t) {
    const double e = rir.samples[t] * rir.samples[t];
    if (t < split) early += e; else late += e;
  }
  if (late == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(early / late);
}

std::map<std::string, double> read_c50_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("c50 scores '" + path + "': cannot open file");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("c50 scores '" + path + "': " + e.what());
  }
  if (!j.is_object()) {
    throw DataError("c50 scores '" + path +
                    "': expected a JSON object {channel_id: c50_db}");
  }
  std::map<std::string, double> out;
  for (const auto& [key, val] : j.items()) {
    if (val.is_number()) {
      out[key] = val.get<double>();
    } else if (val.is_string() && val.get<std::string>() == "+inf") {
      out[key] = std::numeric_limits<double>::infinity();
    } else {
      throw DataError("c50 scores '" + path + "': channel '" + key +
                      "' must be a number or \"+inf\"");
    }
  }
  return out;
}

void write_c50_json(const std::string& path,
                    const std::map<std::string, double>& scores) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [id, c50] : scores) {
    if (std::isinf(c50)) {
      j[id] = "+inf";
    } else {
      j[id] = c50;
    }
  }
  std::ofstream os(path, std::ios::trunc);
  if (!os) {
    throw DataError("c50 scores '" + path + "': cannot open file for writing");
  }
  os << j.dump(2) << "\n";
  if (!os) {
    throw DataError("c50 scores '" + path + "': write failed");
  }
}

}  // namespace mcfront::chansel
