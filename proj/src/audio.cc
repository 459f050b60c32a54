// src/audio.cc

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

#include "bsk/audio.h"

#include "bsk/error.h"

namespace bsk {

AudioClip::AudioClip(std::vector<std::vector<double>> chans, int rate)
    : channels(std::move(chans)), sample_rate(rate) {
  if (sample_rate <= 0) throw ConfigError("AudioClip: sample_rate must be positive");
  if (channels.empty() || channels.size() > 2) {
    throw InputError("AudioClip: channel_count must be 1 or 2");
  }
  for (const auto& ch : channels) {
    if (ch.size() != channels[0].size()) {
      throw InputError("AudioClip: all channels must have equal length");
    }
  }
}

AudioClip MonoDownmix(const AudioClip& clip) {
  if (clip.channel_count() != 2) {
    throw InputError("MonoDownmix: expected a binaural clip");
  }
  const auto& l = clip.channels[0];
  const auto& r = clip.channels[1];
  std::vector<double> mono(l.size());
  for (size_t i = 0; i < l.size(); ++i) mono[i] = 0.5 * (l[i] + r[i]);
  return AudioClip({std::move(mono)}, clip.sample_rate);
}

}  // namespace bsk
