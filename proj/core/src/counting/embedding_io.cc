// core/src/counting/embedding_io.cc
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

#include "mcfront/counting/embedding_io.h"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "mcfront/common/error.h"

namespace mcfront::counting {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};

std::uint32_t read_u32(const std::vector<unsigned char>& b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) |
         (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

void put_u32(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>((v >> 8) & 0xFF));
  s.push_back(static_cast<char>((v >> 16) & 0xFF));
  s.push_back(static_cast<char>((v >> 24) & 0xFF));
}

}  // namespace

EmbeddingSet read_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("embeddings '" + path + "': cannot open file");
  }
  std::vector<unsigned char> buf(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 12) {
    throw DataError("embeddings '" + path + "': file shorter than the " +
                    "12-byte header");
  }
  if (std::memcmp(buf.data(), kMagic, 4) != 0) {
    throw DataError("embeddings '" + path +
                    "': bad magic at byte offset 0, expected \"EMB1\"");
  }
  const std::uint32_t n = read_u32(buf, 4);
  const std::uint32_t d = read_u32(buf, 8);
  const std::size_t expect = 12 + static_cast<std::size_t>(n) * d * 4;
  if (buf.size() != expect) {
    throw DataError("embeddings '" + path + "': payload is " +
                    std::to_string(buf.size() - 12) + " bytes, expected " +
                    std::to_string(expect - 12) + " for " + std::to_string(n) +
                    "x" + std::to_string(d) + " float32");
  }

  EmbeddingSet emb;
  emb.dim = d;
  emb.vectors.assign(n, std::vector<double>(d));
  std::size_t off = 12;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < d; ++j) {
      const std::uint32_t raw = read_u32(buf, off);
      float f;
      std::memcpy(&f, &raw, sizeof f);
      emb.vectors[i][j] = static_cast<double>(f);
      off += 4;
    }
  }

  const std::string sidecar = path + ".json";
  std::ifstream js(sidecar);
  if (!js) {
    throw DataError("embeddings '" + path + "': missing sidecar '" + sidecar +
                    "'");
  }
  nlohmann::json j;
  try {
    js >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("embeddings sidecar '" + sidecar + "': " + e.what());
  }
  if (!j.is_array() || j.size() != n) {
    throw DataError("embeddings sidecar '" + sidecar + "': expected an array "
                    "of " + std::to_string(n) + " span entries");
  }
  emb.spans.reserve(n);
  emb.channel_ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = j[i];
    if (!e.is_object() || !e.contains("start") || !e.contains("end") ||
        !e.contains("channel")) {
      throw DataError("embeddings sidecar '" + sidecar + "': entry " +
                      std::to_string(i) +
                      " needs \"start\", \"end\" and \"channel\"");
    }
    emb.spans.push_back(
        Span{e["start"].get<double>(), e["end"].get<double>()});
    emb.channel_ids.push_back(e["channel"].get<std::string>());
  }
  validate(emb);
  return emb;
}

void write_embeddings(const std::string& path, const EmbeddingSet& emb) {
  validate(emb);
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(emb.size()));
  put_u32(out, static_cast<std::uint32_t>(emb.dim));
  for (const auto& vec : emb.vectors) {
    for (double v : vec) {
      const auto f = static_cast<float>(v);
      std::uint32_t raw;
      std::memcpy(&raw, &f, sizeof raw);
      put_u32(out, raw);
    }
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw DataError("embeddings '" + path + "': cannot open file for writing");
  }
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) {
    throw DataError("embeddings '" + path + "': write failed");
  }

  nlohmann::json j = nlohmann::json::array();
  for (std::size_t i = 0; i < emb.size(); ++i) {
    j.push_back({{"start", emb.spans[i].start_s},
                 {"end", emb.spans[i].end_s},
                 {"channel", emb.channel_ids[i]}});
  }
  std::ofstream sidecar(path + ".json", std::ios::trunc);
  if (!sidecar) {
    throw DataError("embeddings '" + path + ".json': cannot open sidecar");
  }
  sidecar << j.dump(2) << "\n";
  if (!sidecar) {
    throw DataError("embeddings '" + path + ".json': write failed");
  }
}

}  // namespace mcfront::counting
