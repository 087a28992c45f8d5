// core/include/mcfront/common/error.h
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

#ifndef MCFRONT_COMMON_ERROR_H_
#define MCFRONT_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace mcfront {

// Error taxonomy mirrored by the CLI exit codes: ConfigError exits 2,
// DataError exits 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid parameters, options, or malformed configuration input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or degenerate data: files, signals, masks, embeddings.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcfront

#endif  // MCFRONT_COMMON_ERROR_H_
