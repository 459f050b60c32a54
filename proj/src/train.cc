// src/train.cc

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

#include "bsk/train.h"

#include <cmath>
#include <numeric>

#include "bsk/error.h"
#include "bsk/rng.h"

namespace bsk {

std::vector<uint8_t> SceneOneHot(int scene_index, int num_classes) {
  if (scene_index < 0 || scene_index >= num_classes) {
    throw InputError("SceneOneHot: scene index out of range");
  }
  std::vector<uint8_t> one_hot(num_classes, 0);
  one_hot[scene_index] = 1;
  return one_hot;
}

std::vector<EpochLoss> Train(MtlNetwork* net, const std::vector<TrainClip>& clips,
                             const TrainOptions& options) {
  if (clips.empty()) throw InputError("Train: the clip list is empty");
  const OptimizerConfig& opt = options.optimizer;
  const double asc_weight = options.asc_loss_weight_override.value_or(
      net->config().asc_loss_weight);

  auto params = net->Params();
  std::vector<Tensor> moment1, moment2;
  moment1.reserve(params.size());
  moment2.reserve(params.size());
  for (const auto& p : params) {
    moment1.emplace_back(p.value->shape);
    moment2.emplace_back(p.value->shape);
  }
  long long step = 0;

  // Clip order comes from its own stream so that it does not depend on how
  // many parameters initialization drew.
  constexpr uint64_t kShuffleStreamTag = 1;
  Rng shuffle_rng = Rng(options.seed).Fork(kShuffleStreamTag);

  std::vector<EpochLoss> log;
  log.reserve(options.epochs);
  std::vector<size_t> order(clips.size());
  std::iota(order.begin(), order.end(), size_t{0});

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    shuffle_rng.Shuffle(&order);
    EpochLoss epoch_loss;

    for (size_t idx : order) {
      const TrainClip& clip = clips[idx];
      const auto scene = SceneOneHot(clip.scene_index, net->config().asc_classes);

      const ForwardResult out = net->Forward(clip.features, /*train=*/true);
      const LossReport loss =
          ComputeLoss(out, clip.sed, scene, clip.valid_frames, asc_weight);
      epoch_loss.sed_loss += loss.sed_loss;
      epoch_loss.asc_loss += loss.asc_loss;
      epoch_loss.total += loss.total;

      Tensor grad_sed, grad_asc;
      LossGradients(out, clip.sed, scene, clip.valid_frames, asc_weight,
                    &grad_sed, &grad_asc);
      net->ZeroGrads();
      net->Backward(grad_sed, grad_asc);

      ++step;
      const double bias1 = 1.0 - std::pow(opt.beta1, static_cast<double>(step));
      const double bias2 = 1.0 - std::pow(opt.beta2, static_cast<double>(step));
      for (size_t i = 0; i < params.size(); ++i) {
        const double lr =
            opt.learning_rate * (params[i].asc_branch ? opt.asc_lr_scale : 1.0);
        Tensor& value = *params[i].value;
        const Tensor& grad = *params[i].grad;
        Tensor& m = moment1[i];
        Tensor& v = moment2[i];
        for (size_t j = 0; j < value.numel(); ++j) {
          const double g = grad.data[j];
          m.data[j] = opt.beta1 * m.data[j] + (1.0 - opt.beta1) * g;
          v.data[j] = opt.beta2 * v.data[j] + (1.0 - opt.beta2) * g * g;
          const double m_hat = m.data[j] / bias1;
          const double v_hat = v.data[j] / bias2;
          value.data[j] -= lr * m_hat / (std::sqrt(v_hat) + opt.epsilon);
        }
      }
    }

    const double n = static_cast<double>(clips.size());
    epoch_loss.sed_loss /= n;
    epoch_loss.asc_loss /= n;
    epoch_loss.total /= n;
    log.push_back(epoch_loss);
    if (options.epoch_callback && !options.epoch_callback(epoch, epoch_loss)) break;
  }
  return log;
}

}  // namespace bsk
