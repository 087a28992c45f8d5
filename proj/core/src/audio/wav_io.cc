// core/src/audio/wav_io.cc
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

#include "mcfront/audio/wav_io.h"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "mcfront/common/error.h"

namespace mcfront::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;
constexpr std::size_t kMaxChannels = 64;

[[noreturn]] void fail(const std::string& path, std::size_t offset,
                       const std::string& what) {
  throw DataError("wav '" + path + "': " + what + " at byte offset " +
                  std::to_string(offset));
}

// Little-endian readers over an in-memory buffer. WAV is LE on disk; these
// assemble values bytewise so the code is host-endianness independent.
std::uint32_t read_u32(const std::vector<unsigned char>& b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) |
         (static_cast<std::uint32_t>(b[off + 1]) << 8) |
         (static_cast<std::uint32_t>(b[off + 2]) << 16) |
         (static_cast<std::uint32_t>(b[off + 3]) << 24);
}

std::uint16_t read_u16(const std::vector<unsigned char>& b, std::size_t off) {
  return static_cast<std::uint16_t>(
      static_cast<std::uint32_t>(b[off]) |
      (static_cast<std::uint32_t>(b[off + 1]) << 8));
}

void append_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

void append_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace

WavData read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("wav '" + path + "': cannot open file");
  }
  std::vector<unsigned char> buf(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < 12) {
    fail(path, buf.size(), "file shorter than RIFF header");
  }
  if (std::memcmp(buf.data(), "RIFF", 4) != 0) {
    fail(path, 0, "missing RIFF tag");
  }
  if (std::memcmp(buf.data() + 8, "WAVE", 4) != 0) {
    fail(path, 8, "missing WAVE form type");
  }

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t num_channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  std::size_t data_off = 0;
  std::size_t data_len = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const std::size_t header_off = pos;
    char id[5] = {0};
    std::memcpy(id, buf.data() + pos, 4);
    const std::uint32_t chunk_len = read_u32(buf, pos + 4);
    pos += 8;
    if (pos + chunk_len > buf.size()) {
      fail(path, header_off,
           std::string("chunk '") + id + "' length " +
               std::to_string(chunk_len) + " overruns file");
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_len < 16) {
        fail(path, header_off, "fmt chunk shorter than 16 bytes");
      }
      format = read_u16(buf, pos);
      num_channels = read_u16(buf, pos + 2);
      sample_rate = read_u32(buf, pos + 4);
      bits = read_u16(buf, pos + 14);
      if (format == kFormatExtensible) {
        // The real format tag lives in the first two bytes of the SubFormat
        // GUID; wValidBitsPerSample sits at extension offset 0 and is not
        // needed here because we require container-sized samples.
        if (chunk_len < 40) {
          fail(path, header_off, "extensible fmt chunk shorter than 40 bytes");
        }
        format = read_u16(buf, pos + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_off = pos;
      data_len = chunk_len;
      have_data = true;
    }
    // Chunks are word aligned; a chunk with odd length is padded by one byte.
    pos += chunk_len + (chunk_len & 1);
  }

  if (!have_fmt) fail(path, buf.size(), "no fmt chunk");
  if (!have_data) fail(path, buf.size(), "no data chunk");
  if (num_channels == 0 || num_channels > kMaxChannels) {
    fail(path, data_off,
         "channel count " + std::to_string(num_channels) +
             " outside supported range 1..64");
  }
  if (sample_rate == 0) fail(path, data_off, "sample rate field is zero");

  std::size_t bytes_per_sample = 0;
  if (format == kFormatPcm && bits == 16) {
    bytes_per_sample = 2;
  } else if (format == kFormatPcm && bits == 24) {
    bytes_per_sample = 3;
  } else if (format == kFormatFloat && bits == 32) {
    bytes_per_sample = 4;
  } else {
    fail(path, data_off,
         "unsupported encoding (format tag " + std::to_string(format) +
             ", " + std::to_string(bits) + " bits per sample)");
  }

  const std::size_t frame_bytes = bytes_per_sample * num_channels;
  if (data_len % frame_bytes != 0) {
    fail(path, data_off,
         "data chunk length " + std::to_string(data_len) +
             " is not a whole number of " + std::to_string(frame_bytes) +
             "-byte frames");
  }
  const std::size_t num_frames = data_len / frame_bytes;

  WavData out;
  out.sample_rate = static_cast<double>(sample_rate);
  out.channels.assign(num_channels, std::vector<double>(num_frames));

  const unsigned char* p = buf.data() + data_off;
  for (std::size_t f = 0; f < num_frames; ++f) {
    for (std::size_t c = 0; c < num_channels; ++c) {
      double v = 0.0;
      if (bytes_per_sample == 2) {
        const auto raw = static_cast<std::int16_t>(
            static_cast<std::uint16_t>(p[0]) |
            (static_cast<std::uint16_t>(p[1]) << 8));
        v = static_cast<double>(raw) / 32768.0;
      } else if (bytes_per_sample == 3) {
        std::int32_t raw = static_cast<std::int32_t>(
            static_cast<std::uint32_t>(p[0]) |
            (static_cast<std::uint32_t>(p[1]) << 8) |
            (static_cast<std::uint32_t>(p[2]) << 16));
        if (raw & 0x800000) raw |= ~0xFFFFFF;  // sign extend
        v = static_cast<double>(raw) / 8388608.0;
      } else {
        std::uint32_t raw = read_u32(buf, static_cast<std::size_t>(p - buf.data()));
        float fv;
        std::memcpy(&fv, &raw, sizeof fv);
        v = static_cast<double>(fv);
      }
      out.channels[c][f] = v;
      p += bytes_per_sample;
    }
  }
  return out;
}

void write_wav(const std::string& path,
               const std::vector<std::vector<double>>& channels,
               double sample_rate) {
  if (channels.empty() || channels.size() > kMaxChannels) {
    throw DataError("wav '" + path + "': channel count " +
                    std::to_string(channels.size()) +
                    " outside supported range 1..64");
  }
  const std::size_t num_frames = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != num_frames) {
      throw DataError("wav '" + path + "': channels have mismatched lengths (" +
                      std::to_string(num_frames) + " vs " +
                      std::to_string(ch.size()) + ")");
    }
  }
  if (!(sample_rate > 0.0)) {
    throw DataError("wav '" + path + "': sample rate must be positive");
  }

  const auto nch = static_cast<std::uint16_t>(channels.size());
  const std::uint32_t rate = static_cast<std::uint32_t>(sample_rate);
  const std::uint32_t block_align = 4u * nch;
  const std::uint32_t data_len =
      static_cast<std::uint32_t>(num_frames) * block_align;
  // fmt (18) + fact (4) payloads plus three chunk headers and "WAVE".
  const std::uint32_t riff_len = 4 + (8 + 18) + (8 + 4) + (8 + data_len);

  std::string out;
  out.reserve(12 + riff_len);
  out.append("RIFF");
  append_u32(out, riff_len);
  out.append("WAVE");

  out.append("fmt ");
  append_u32(out, 18);
  append_u16(out, kFormatFloat);
  append_u16(out, nch);
  append_u32(out, rate);
  append_u32(out, rate * block_align);  // byte rate
  append_u16(out, static_cast<std::uint16_t>(block_align));
  append_u16(out, 32);  // bits per sample
  append_u16(out, 0);   // cbSize: no extension

  out.append("fact");
  append_u32(out, 4);
  append_u32(out, static_cast<std::uint32_t>(num_frames));

  out.append("data");
  append_u32(out, data_len);
  for (std::size_t f = 0; f < num_frames; ++f) {
    for (const auto& ch : channels) {
      const auto fv = static_cast<float>(ch[f]);
      std::uint32_t raw;
      std::memcpy(&raw, &fv, sizeof raw);
      append_u32(out, raw);
    }
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) {
    throw DataError("wav '" + path + "': cannot open file for writing");
  }
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) {
    throw DataError("wav '" + path + "': write failed");
  }
}

}  // namespace mcfront::audio
