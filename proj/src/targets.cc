// src/targets.cc

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

#include "bsk/targets.h"

#include <algorithm>
#include <cmath>

#include "bsk/error.h"

namespace bsk {

BinaryMatrix EncodeSedTargets(const std::vector<AnnotationEvent>& events,
                              double frame_hop_seconds, size_t num_frames,
                              const LabelVocabulary& vocab) {
  if (frame_hop_seconds <= 0.0) {
    throw ConfigError("EncodeSedTargets: frame hop must be positive");
  }
  BinaryMatrix sed(num_frames, vocab.event_classes.size());
  for (const auto& ev : events) {
    const int c = vocab.EventIndex(ev.label);
    // Frames whose interval [n*hop, (n+1)*hop) can overlap [onset, offset).
    const auto first = static_cast<long long>(std::floor(ev.onset / frame_hop_seconds));
    const auto last = static_cast<long long>(std::ceil(ev.offset / frame_hop_seconds));
    const long long lo = std::max(0LL, first - 1);
    const long long hi = std::min(static_cast<long long>(num_frames), last + 1);
    for (long long n = lo; n < hi; ++n) {
      const double frame_start = static_cast<double>(n) * frame_hop_seconds;
      const double frame_end = static_cast<double>(n + 1) * frame_hop_seconds;
      if (ev.onset < frame_end && frame_start < ev.offset) {
        sed.at(static_cast<size_t>(n), static_cast<size_t>(c)) = 1;
      }
    }
  }
  return sed;
}

std::vector<uint8_t> EncodeSceneTarget(const std::string& scene_label,
                                       const LabelVocabulary& vocab) {
  std::vector<uint8_t> one_hot(vocab.scene_classes.size(), 0);
  one_hot[static_cast<size_t>(vocab.SceneIndex(scene_label))] = 1;
  return one_hot;
}

std::vector<ClipWindow> SplitIntoClips(const FeatureTensor& features,
                                       const TargetSet& targets, int frames) {
  if (frames <= 0) throw ConfigError("SplitIntoClips: frames must be positive");
  if (targets.sed.rows != features.frames) {
    throw ShapeError("SplitIntoClips: target rows do not match feature frames");
  }
  const size_t total = features.frames;
  const size_t window = static_cast<size_t>(frames);
  const size_t count = (total + window - 1) / window;

  std::vector<ClipWindow> windows;
  windows.reserve(count);
  for (size_t wi = 0; wi < count; ++wi) {
    const size_t start = wi * window;
    const size_t valid = std::min(window, total - start);

    ClipWindow out;
    out.valid_frames = static_cast<int>(valid);

    out.features.channels = features.channels;
    out.features.frames = static_cast<uint32_t>(window);
    out.features.bands = features.bands;
    out.features.layout = features.layout;
    out.features.data.assign(out.features.size(), 0.0f);
    for (size_t ch = 0; ch < features.channels; ++ch) {
      for (size_t t = 0; t < valid; ++t) {
        for (size_t m = 0; m < features.bands; ++m) {
          out.features.at(ch, t, m) = features.at(ch, start + t, m);
        }
      }
    }

    out.targets.sed = BinaryMatrix(window, targets.sed.cols);
    for (size_t t = 0; t < valid; ++t) {
      for (size_t c = 0; c < targets.sed.cols; ++c) {
        out.targets.sed.at(t, c) = targets.sed.at(start + t, c);
      }
    }
    out.targets.scene = targets.scene;
    windows.push_back(std::move(out));
  }
  return windows;
}

}  // namespace bsk
