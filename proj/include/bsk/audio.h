// include/bsk/audio.h

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

#ifndef BSK_AUDIO_H_
#define BSK_AUDIO_H_

#include <cstddef>
#include <vector>

namespace bsk {

// A mono or binaural clip. Samples are nominal [-1, 1] amplitudes; all
// channels have equal length and share one sample rate.
struct AudioClip {
  std::vector<std::vector<double>> channels;
  int sample_rate = 0;

  AudioClip() = default;
  // Validates the invariants and throws InputError / ConfigError on breach.
  AudioClip(std::vector<std::vector<double>> chans, int rate);

  int channel_count() const { return static_cast<int>(channels.size()); }
  size_t length() const { return channels.empty() ? 0 : channels[0].size(); }
  double duration_seconds() const {
    return static_cast<double>(length()) / sample_rate;
  }
};

// (L+R)/2 downmix of a binaural clip. Mono input is an InputError.
AudioClip MonoDownmix(const AudioClip& clip);

}  // namespace bsk

#endif  // BSK_AUDIO_H_
