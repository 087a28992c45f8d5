// core/src/beamform/tf_mask.cc
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

#include "mcfront/beamform/tf_mask.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "mcfront/common/error.h"

namespace mcfront::beamform {

namespace {

constexpr char kMagic[4] = {'M', 'S', 'K', '1'};

std::uint32_t read_u32(const std::vector<unsigned char>& buf,
                       std::size_t off) {
  return static_cast<std::uint32_t>(buf[off]) |
         static_cast<std::uint32_t>(buf[off + 1]) << 8 |
         static_cast<std::uint32_t>(buf[off + 2]) << 16 |
         static_cast<std::uint32_t>(buf[off + 3]) << 24;
}

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

}  // namespace

void validate(const TfMask& mask) {
  if (mask.values.size() != mask.frames * mask.bins) {
    throw DataError("mask: " + std::to_string(mask.values.size()) +
                    " values do not fill " + std::to_string(mask.frames) +
                    " frames x " + std::to_string(mask.bins) + " bins");
  }
  for (std::size_t i = 0; i < mask.values.size(); ++i) {
    const double v = mask.values[i];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DataError("mask: value " + std::to_string(v) + " at frame " +
                      std::to_string(i / mask.bins) + ", bin " +
                      std::to_string(i % mask.bins) + " is outside [0, 1]");
    }
  }
}

TfMask complement_mask(const TfMask& mask) {
  validate(mask);
  TfMask out = mask;
  out.role = mask.role == MaskRole::kTarget ? MaskRole::kNoise
                                            : MaskRole::kTarget;
  for (double& v : out.values) v = 1.0 - v;
  return out;
}

TfMask read_mask(const std::string& path, MaskRole role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("mask '" + path + "': cannot open file");
  }
  std::vector<unsigned char> buf(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 12) {
    throw DataError("mask '" + path + "': file of " +
                    std::to_string(buf.size()) +
                    " bytes is shorter than the 12-byte header");
  }
  if (std::memcmp(buf.data(), kMagic, 4) != 0) {
    throw DataError("mask '" + path +
                    "': bad magic at byte offset 0, expected \"MSK1\"");
  }
  const std::uint32_t frames = read_u32(buf, 4);
  const std::uint32_t bins = read_u32(buf, 8);
  const std::size_t expect =
      12 + static_cast<std::size_t>(frames) * bins * 4;
  if (buf.size() != expect) {
    throw DataError("mask '" + path + "': payload is " +
                    std::to_string(buf.size() - 12) + " bytes, expected " +
                    std::to_string(expect - 12) + " for " +
                    std::to_string(frames) + "x" + std::to_string(bins));
  }
  TfMask mask(frames, bins, role);
  for (std::size_t i = 0; i < mask.values.size(); ++i) {
    std::uint32_t word = read_u32(buf, 12 + i * 4);
    float f;
    std::memcpy(&f, &word, 4);
    mask.values[i] = static_cast<double>(f);
  }
  validate(mask);
  return mask;
}

void write_mask(const std::string& path, const TfMask& mask) {
  validate(mask);
  std::string out;
  out.reserve(12 + mask.values.size() * 4);
  out.append(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(mask.frames));
  put_u32(out, static_cast<std::uint32_t>(mask.bins));
  for (double v : mask.values) {
    const float f = static_cast<float>(v);
    std::uint32_t word;
    std::memcpy(&word, &f, 4);
    put_u32(out, word);
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw DataError("mask '" + path + "': cannot open file for writing");
  }
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) {
    throw DataError("mask '" + path + "': write failed");
  }
}

}  // namespace mcfront::beamform
