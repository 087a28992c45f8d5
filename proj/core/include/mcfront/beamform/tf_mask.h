// core/include/mcfront/beamform/tf_mask.h
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

#ifndef MCFRONT_BEAMFORM_TF_MASK_H_
#define MCFRONT_BEAMFORM_TF_MASK_H_

#include <cstddef>
#include <string>
#include <vector>

namespace mcfront::beamform {

enum class MaskRole { kTarget, kNoise };

// Time-frequency mask in [0, 1], indexed [frame][bin]. Mask estimation is
// external; masks come either from files or from the scene simulator's
// oracle.
struct TfMask {
  std::size_t frames = 0;
  std::size_t bins = 0;
  MaskRole role = MaskRole::kTarget;
  std::vector<double> values;  // row-major, frames * bins

  TfMask() = default;
  TfMask(std::size_t frames_, std::size_t bins_, MaskRole role_,
         double fill = 0.0)
      : frames(frames_), bins(bins_), role(role_),
        values(frames_ * bins_, fill) {}

  double& at(std::size_t frame, std::size_t bin) {
    return values[frame * bins + bin];
  }
  double at(std::size_t frame, std::size_t bin) const {
    return values[frame * bins + bin];
  }
};

// Throws DataError if the value count does not match frames * bins or any
// value falls outside [0, 1].
void validate(const TfMask& mask);

// 1 - mask, with the role flipped. The default noise mask when none is
// supplied explicitly.
TfMask complement_mask(const TfMask& mask);

// Mask file format: magic "MSK1", little-endian u32 frames, u32 bins, then
// frames * bins little-endian float32 values in [0, 1], row-major.
TfMask read_mask(const std::string& path, MaskRole role = MaskRole::kTarget);
void write_mask(const std::string& path, const TfMask& mask);

}  // namespace mcfront::beamform

#endif  // MCFRONT_BEAMFORM_TF_MASK_H_
