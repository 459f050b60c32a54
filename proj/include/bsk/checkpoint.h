// include/bsk/checkpoint.h

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

#ifndef BSK_CHECKPOINT_H_
#define BSK_CHECKPOINT_H_

#include <memory>
#include <string>

#include "bsk/features.h"
#include "bsk/network.h"

namespace bsk {

// Model checkpoint, magic "BMK1": a little-endian config block (mode,
// feature layout, input channels, every architecture field), then the
// trainable tensors in declaration order and the batch-norm running
// statistics, each as a shape header plus 64-bit floats.
void SaveCheckpoint(const std::string& path, MtlNetwork& net, FeatureSet layout);

struct LoadedCheckpoint {
  std::unique_ptr<MtlNetwork> network;
  FeatureSet layout = FeatureSet::kMel1ch;
};

LoadedCheckpoint LoadCheckpoint(const std::string& path);

}  // namespace bsk

#endif  // BSK_CHECKPOINT_H_
