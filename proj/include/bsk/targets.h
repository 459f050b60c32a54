// include/bsk/targets.h

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

#ifndef BSK_TARGETS_H_
#define BSK_TARGETS_H_

#include <cstdint>
#include <vector>

#include "bsk/annotations.h"
#include "bsk/features.h"

namespace bsk {

// Dense 0/1 matrix shared by the target encoder and the metrics.
struct BinaryMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<uint8_t> data;

  BinaryMatrix() = default;
  BinaryMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0) {}
  uint8_t& at(size_t r, size_t c) { return data[r * cols + c]; }
  uint8_t at(size_t r, size_t c) const { return data[r * cols + c]; }
};

// Frame-level event activity plus the one-hot scene of one clip window.
struct TargetSet {
  BinaryMatrix sed;                // T x C_SED
  std::vector<uint8_t> scene;      // length C_ASC, sums to exactly 1
};

// Frame n, class c is active iff [n*hop, (n+1)*hop) overlaps [onset, offset)
// of any event with that class. Events are clamped to the frame grid; an
// event label outside the vocabulary raises InputError naming it.
BinaryMatrix EncodeSedTargets(const std::vector<AnnotationEvent>& events,
                              double frame_hop_seconds, size_t num_frames,
                              const LabelVocabulary& vocab);

std::vector<uint8_t> EncodeSceneTarget(const std::string& scene_label,
                                       const LabelVocabulary& vocab);

// One network input window: padded features/targets plus the count of
// real (unpadded) frames at the front of the window.
struct ClipWindow {
  FeatureTensor features;
  TargetSet targets;
  int valid_frames = 0;
};

// Cuts a recording into non-overlapping windows of exactly `frames` frames.
// The final partial window is zero-padded in both features and targets, with
// valid_frames recording how many leading frames are real.
std::vector<ClipWindow> SplitIntoClips(const FeatureTensor& features,
                                       const TargetSet& targets, int frames);

}  // namespace bsk

#endif  // BSK_TARGETS_H_
