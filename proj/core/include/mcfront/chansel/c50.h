// core/include/mcfront/chansel/c50.h
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

#ifndef MCFRONT_CHANSEL_C50_H_
#define MCFRONT_CHANSEL_C50_H_

#include <map>
#include <string>

#include "mcfront/audio/waveform.h"

namespace mcfront::chansel {

// Speech clarity index from an impulse response:
//   C50 = 10*log10( sum_{t < t0+50ms} h^2 / sum_{t >= t0+50ms} h^2 )
// where t0 is the direct-path onset, the first sample with |h| at or above
// 1% of max|h| (robust to leading silence). Returns +infinity when the late
// part carries no energy (anechoic). Throws DataError on an all-zero
// response.
double c50_from_rir(const audio::Waveform& rir);

// Per-channel C50 scores as a JSON object {channel_id: c50_db}. Infinite
// values are written as the string "+inf" since JSON has no infinity
// literal; the reader accepts that sentinel and plain numbers.
std::map<std::string, double> read_c50_json(const std::string& path);
void write_c50_json(const std::string& path,
                    const std::map<std::string, double>& scores);

}  // namespace mcfront::chansel

#endif  // MCFRONT_CHANSEL_C50_H_
