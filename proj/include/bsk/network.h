// include/bsk/network.h

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

#ifndef BSK_NETWORK_H_
#define BSK_NETWORK_H_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsk/layers.h"
#include "bsk/targets.h"
#include "bsk/tensor.h"

namespace bsk {

// Architecture parameters. One column of the parameter table per dataset.
struct ModelConfig {
  int mel_bands = 64;              // M
  int frames = 500;                // T
  int kernel_h = 3, kernel_w = 3;  // kernel size
  int shared_filters = 128;        // P1
  int asc_filters = 256;           // P2
  std::array<int, 5> pooling = {8, 2, 2, 25, 20};  // MP: 3 mel, 2 time
  int gru_features = 64;           // Q, concatenated over both directions
  int sed_dense = 128;             // G[0]
  int asc_dense1 = 512;            // G[1]
  int asc_dense2 = 256;            // G[2]
  int sed_classes = 25;            // C_SED
  int asc_classes = 4;             // C_ASC
  double asc_loss_weight = 0.0001;

  void Validate() const;
  int mel_after_pooling() const {
    return mel_bands / (pooling[0] * pooling[1] * pooling[2]);
  }
  // Known parameter tables.
  static ModelConfig Tut20162017();
  static ModelConfig TutSed2009();
};

enum class TaskMode : uint8_t { kMtl = 0, kSedOnly = 1, kAscOnly = 2 };

const char* TaskModeName(TaskMode mode);
TaskMode TaskModeFromName(const std::string& name);

struct ForwardResult {
  Tensor sed_probs;  // T x C_SED (empty in ASC-only mode)
  Tensor asc_probs;  // C_ASC as 1 x C_ASC (empty in SED-only mode)
};

struct LossReport {
  double sed_loss = 0.0;
  double asc_loss = 0.0;
  double total = 0.0;
};

// The two-branch CRNN. A shared stack of three conv blocks feeds a
// recurrent detection branch and a convolutional classification branch;
// single-task modes simply omit the other branch and its parameters.
class MtlNetwork {
 public:
  MtlNetwork(const ModelConfig& config, TaskMode mode, int input_channels);

  void InitParams(Rng* rng);

  // Runs the graph. Train mode caches activations for Backward and updates
  // batch-norm running statistics; eval mode uses the running statistics.
  ForwardResult Forward(const Tensor& x, bool train);

  // Backpropagates from the loss gradients at the output logits.
  // Requires a prior train-mode Forward; gradients accumulate.
  void Backward(const Tensor& grad_sed_logits, const Tensor& grad_asc_logits);

  void ZeroGrads();
  std::vector<ParamRef> Params();
  std::vector<StateRef> States();

  const ModelConfig& config() const { return config_; }
  TaskMode mode() const { return mode_; }
  int input_channels() const { return input_channels_; }
  size_t gru_input_features() const;

 private:
  struct SharedStack {
    Conv2d conv;
    BatchNorm2d bn;
    Relu relu;
    MaxPool pool;
    SharedStack(size_t in_ch, size_t out_ch, size_t kh, size_t kw, size_t mp)
        : conv(in_ch, out_ch, kh, kw), bn(out_ch), pool(PoolAxis::kMel, mp) {}
  };
  struct SedBranch {
    BiGru gru;
    Dense fc1;
    Dense fc2;
    SedBranch(size_t in, size_t q, size_t g, size_t classes)
        : gru(in, q / 2), fc1(q, g), fc2(g, classes) {}
  };
  struct AscBranch {
    Conv2d conv1;
    Relu relu1;
    MaxPool pool1;
    Conv2d conv2;
    Relu relu2;
    MaxPool pool2;
    GlobalMaxTime residual_max;
    Dense fc1;
    Dense fc2;
    Dense fc3;
    AscBranch(const ModelConfig& c)
        : conv1(c.shared_filters, c.asc_filters, c.kernel_h, c.kernel_w),
          pool1(PoolAxis::kTime, c.pooling[3]),
          conv2(c.asc_filters, c.asc_filters, c.kernel_h, c.kernel_w),
          pool2(PoolAxis::kTime, c.pooling[4]),
          fc1(static_cast<size_t>(c.asc_filters) * c.mel_after_pooling(),
              c.asc_dense1),
          fc2(c.asc_dense1, c.asc_dense2),
          fc3(c.asc_dense2, c.asc_classes) {}
  };

  Tensor SharedForward(const Tensor& x, bool train);
  Tensor SedForward(const Tensor& shared, bool train);
  Tensor AscForward(const Tensor& shared, bool train);

  ModelConfig config_;
  TaskMode mode_;
  int input_channels_;

  std::vector<SharedStack> shared_;
  std::optional<SedBranch> sed_;
  std::optional<AscBranch> asc_;

  // Forward caches for backprop.
  Tensor shared_out_cache_;
  Tensor sed_probs_cache_;
  Tensor asc_probs_cache_;
};

// Joint loss: mean masked binary cross-entropy over the detection grid plus
// the weighted categorical cross-entropy of the scene head. Probabilities
// are clamped to [1e-7, 1 - 1e-7] inside the logs.
LossReport ComputeLoss(const ForwardResult& out, const BinaryMatrix& sed_targets,
                       const std::vector<uint8_t>& scene_target, int valid_frames,
                       double asc_loss_weight);

// Loss gradients at the pre-sigmoid / pre-softmax logits, with the clamp
// regions contributing exactly zero. Shapes mirror the forward outputs;
// either tensor is empty when the corresponding branch is absent.
void LossGradients(const ForwardResult& out, const BinaryMatrix& sed_targets,
                   const std::vector<uint8_t>& scene_target, int valid_frames,
                   double asc_loss_weight, Tensor* grad_sed_logits,
                   Tensor* grad_asc_logits);

struct Prediction {
  BinaryMatrix sed;      // thresholded detections
  int scene_index = -1;  // argmax scene, lowest index wins ties
};

Prediction Predict(MtlNetwork* net, const Tensor& x, double sed_threshold);

}  // namespace bsk

#endif  // BSK_NETWORK_H_
