// core/include/mcfront/audio/wav_io.h
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

#ifndef MCFRONT_AUDIO_WAV_IO_H_
#define MCFRONT_AUDIO_WAV_IO_H_

#include <string>
#include <vector>

namespace mcfront::audio {

// Decoded contents of a RIFF/WAVE file with channels deinterleaved.
// Integer PCM is normalized to [-1, 1) by the nominal full-scale value
// (32768 for 16-bit, 8388608 for 24-bit); float data is passed through.
struct WavData {
  std::vector<std::vector<double>> channels;
  double sample_rate = 0.0;
};

// Reads a WAV file. Accepts PCM16, PCM24 and IEEE float32, both as plain
// format tags and wrapped in WAVE_FORMAT_EXTENSIBLE, with 1 to 64 channels.
// Unknown chunks are skipped. Throws DataError naming the offending field
// and its byte offset on malformed or truncated input.
WavData read_wav(const std::string& path);

// Writes channels as IEEE float32 (format tag 3, 18-byte fmt chunk plus a
// fact chunk, per the WAVE spec for non-PCM data). All channels must have
// equal length. Throws DataError on I/O failure or mismatched lengths.
void write_wav(const std::string& path,
               const std::vector<std::vector<double>>& channels,
               double sample_rate);

}  // namespace mcfront::audio

#endif  // MCFRONT_AUDIO_WAV_IO_H_
