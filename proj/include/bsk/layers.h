// include/bsk/layers.h

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

#ifndef BSK_LAYERS_H_
#define BSK_LAYERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bsk/rng.h"
#include "bsk/tensor.h"

namespace bsk {

// Handle to one trainable tensor, its gradient buffer, and where it lives.
struct ParamRef {
  std::string name;
  Tensor* value = nullptr;
  Tensor* grad = nullptr;
  bool asc_branch = false;
};

// Handle to non-trainable layer state that checkpoints must carry.
struct StateRef {
  std::string name;
  Tensor* value = nullptr;
};

// 2-D convolution with "same" zero padding over a CH x T x M input,
// producing P x T x M. Cross-correlation plus bias, the usual convention.
class Conv2d {
 public:
  Conv2d(size_t in_channels, size_t out_channels, size_t kernel_h, size_t kernel_w);

  void Init(Rng* rng);
  Tensor Forward(const Tensor& x, bool train);
  // Returns the input gradient; accumulates weight/bias gradients.
  Tensor Backward(const Tensor& grad_out);
  void CollectParams(const std::string& prefix, bool asc, std::vector<ParamRef>* out);

  Tensor weight;  // P x C x kh x kw
  Tensor bias;    // P
  Tensor grad_weight;
  Tensor grad_bias;

 private:
  size_t in_channels_, out_channels_, kernel_h_, kernel_w_;
  Tensor x_cache_;
};

// Per-feature-map batch normalization over the T x M plane of one clip.
// Train mode normalizes by batch statistics and updates the running ones
// with momentum 0.9; eval mode uses the running statistics.
class BatchNorm2d {
 public:
  explicit BatchNorm2d(size_t channels);

  void Init(Rng* rng);
  Tensor Forward(const Tensor& x, bool train);
  Tensor Backward(const Tensor& grad_out);
  void CollectParams(const std::string& prefix, bool asc, std::vector<ParamRef>* out);
  void CollectState(const std::string& prefix, std::vector<StateRef>* out);

  Tensor gamma, beta;
  Tensor grad_gamma, grad_beta;
  Tensor running_mean, running_var;
  double momentum = 0.9;
  double epsilon = 1e-5;

 private:
  size_t channels_;
  Tensor centered_cache_;        // x - mean, train mode
  std::vector<double> inv_std_;  // per channel
};

// Element-wise rectifier.
class Relu {
 public:
  Tensor Forward(const Tensor& x, bool train);
  Tensor Backward(const Tensor& grad_out);

 private:
  std::vector<uint8_t> active_;
};

enum class PoolAxis { kTime, kMel };

// Non-overlapping max pooling along one axis of a P x T x M tensor.
// The axis length must be divisible by the factor.
class MaxPool {
 public:
  MaxPool(PoolAxis axis, size_t factor);

  Tensor Forward(const Tensor& x, bool train);
  Tensor Backward(const Tensor& grad_out);

  size_t factor() const { return factor_; }

 private:
  PoolAxis axis_;
  size_t factor_;
  std::vector<size_t> argmax_;
  std::vector<size_t> in_shape_;
};

// Max over the entire remaining time axis, P x T x M -> P x 1 x M.
class GlobalMaxTime {
 public:
  Tensor Forward(const Tensor& x, bool train);
  Tensor Backward(const Tensor& grad_out);

 private:
  std::vector<size_t> argmax_;
  std::vector<size_t> in_shape_;
};

// Fully connected y = W x + b applied to every row of a T x F matrix.
class Dense {
 public:
  Dense(size_t in_features, size_t out_features);

  void Init(Rng* rng);
  Tensor Forward(const Tensor& x, bool train);
  Tensor Backward(const Tensor& grad_out);
  void CollectParams(const std::string& prefix, bool asc, std::vector<ParamRef>* out);

  Tensor weight;  // out x in
  Tensor bias;    // out

 private:
  size_t in_features_, out_features_;
  Tensor x_cache_;
  Tensor grad_weight_, grad_bias_;

 public:
  Tensor& grad_weight() { return grad_weight_; }
  Tensor& grad_bias() { return grad_bias_; }
};

// Single bidirectional GRU layer: T x F in, T x (2 * hidden) out.
// Gates use the update/reset/candidate form with the reset gate applied to
// the previous hidden state before the recurrent matmul:
//   z = sigmoid(Wz x + Uz h + bz)
//   r = sigmoid(Wr x + Ur h + br)
//   c = tanh(Wc x + Uc (r . h) + bc)
//   h' = (1 - z) . h + z . c
class BiGru {
 public:
  BiGru(size_t input_features, size_t hidden_per_direction);

  void Init(Rng* rng);
  Tensor Forward(const Tensor& x, bool train);
  Tensor Backward(const Tensor& grad_out);
  void CollectParams(const std::string& prefix, bool asc, std::vector<ParamRef>* out);

  struct Direction {
    Tensor wz, wr, wc;  // H x F
    Tensor uz, ur, uc;  // H x H
    Tensor bz, br, bc;  // H
    Tensor gwz, gwr, gwc, guz, gur, guc, gbz, gbr, gbc;
  };

  Direction& direction(int i) { return dirs_[i]; }
  size_t hidden() const { return hidden_; }

 private:
  struct StepCache {
    std::vector<double> z, r, c, h_prev, rh;
  };

  size_t input_, hidden_;
  Direction dirs_[2];
  Tensor x_cache_;
  std::vector<StepCache> caches_[2];
};

// Glorot-uniform fill used by every trainable matrix.
void GlorotInit(Tensor* w, size_t fan_in, size_t fan_out, Rng* rng);

}  // namespace bsk

#endif  // BSK_LAYERS_H_
