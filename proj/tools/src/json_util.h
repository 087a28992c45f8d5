// tools/src/json_util.h
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

#ifndef MCFRONT_TOOLS_JSON_UTIL_H_
#define MCFRONT_TOOLS_JSON_UTIL_H_

#include <initializer_list>
#include <string>

#include "json.hpp"
#include "mcfront/common/error.h"

namespace mcfront::tools {

// Strict config parsing helpers: any key outside the documented schema is a
// ConfigError so typos never silently fall back to defaults.

inline void check_keys(const nlohmann::json& obj, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw ConfigError("config: " + where + " must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read_into(const nlohmann::json& obj, const char* key,
               const std::string& where, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config: bad value for '" + std::string(key) + "' in " +
                      where);
  }
}

}  // namespace mcfront::tools

#endif  // MCFRONT_TOOLS_JSON_UTIL_H_
