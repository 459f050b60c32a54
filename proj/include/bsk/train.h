// include/bsk/train.h

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

#ifndef BSK_TRAIN_H_
#define BSK_TRAIN_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bsk/network.h"

namespace bsk {

struct OptimizerConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Scales the step applied to classification-branch parameters; 0 freezes
  // them while still letting their gradients flow into the shared stack.
  double asc_lr_scale = 1.0;
};

// One training example: a clip window with its targets.
struct TrainClip {
  Tensor features;        // CH x T x M
  BinaryMatrix sed;       // T x C_SED
  int scene_index = 0;
  int valid_frames = 0;
};

struct EpochLoss {
  double sed_loss = 0.0;
  double asc_loss = 0.0;
  double total = 0.0;
};

struct TrainOptions {
  int epochs = 100;
  uint64_t seed = 0;
  OptimizerConfig optimizer;
  // Replaces the config's classification loss weight for this run. Zero
  // detaches the classification loss entirely.
  std::optional<double> asc_loss_weight_override;
  // Invoked after every epoch when set; returning false stops training early.
  std::function<bool(int epoch, const EpochLoss&)> epoch_callback;
};

// Adam over per-clip steps in seeded shuffled order. The clip order stream
// is forked from the seed independently of parameter initialization, so
// networks with and without the classification branch see identical orders.
// Per-epoch losses are the averages over the epoch's clips, measured before
// each update. An empty clip list is an InputError.
std::vector<EpochLoss> Train(MtlNetwork* net, const std::vector<TrainClip>& clips,
                             const TrainOptions& options);

std::vector<uint8_t> SceneOneHot(int scene_index, int num_classes);

}  // namespace bsk

#endif  // BSK_TRAIN_H_
