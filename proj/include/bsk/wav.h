// include/bsk/wav.h

// Copyright 2026  The bsk authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef BSK_WAV_H_
#define BSK_WAV_H_

#include <string>

#include "bsk/audio.h"

namespace bsk {

// RIFF/WAVE reader for 16/24-bit PCM and 32-bit IEEE float, 1 or 2 channels.
// PCM samples are normalized by 2^(bits-1). Failure modes are distinct
// ParseErrors: "malformed header", "unsupported codec", "truncated data".
AudioClip ReadWav(const std::string& path);

// 16-bit PCM writer; samples are clamped to [-1, 1] and rounded to
// round(x * 32767).
void WriteWav16(const std::string& path, const AudioClip& clip);

}  // namespace bsk

#endif  // BSK_WAV_H_
