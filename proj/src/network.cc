// src/network.cc

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

#include "bsk/network.h"

#include <algorithm>
#include <cmath>

#include "bsk/error.h"

namespace bsk {

namespace {
constexpr double kProbClamp = 1e-7;
}

void ModelConfig::Validate() const {
  if (mel_bands < 1 || frames < 1) {
    throw ConfigError("ModelConfig: mel_bands and frames must be positive");
  }
  if (kernel_h < 1 || kernel_w < 1) {
    throw ConfigError("ModelConfig: kernel must be at least 1x1");
  }
  if (shared_filters < 1 || asc_filters < 1) {
    throw ConfigError("ModelConfig: filter counts must be positive");
  }
  for (int f : pooling) {
    if (f < 1) throw ConfigError("ModelConfig: pooling factors must be positive");
  }
  const int mel_div = pooling[0] * pooling[1] * pooling[2];
  if (mel_bands % mel_div != 0) {
    throw ConfigError("ModelConfig: mel_bands must be divisible by the mel pooling product");
  }
  if (pooling[3] * pooling[4] > frames) {
    throw ConfigError("ModelConfig: time pooling product exceeds the frame count");
  }
  if (frames % pooling[3] != 0 || (frames / pooling[3]) % pooling[4] != 0) {
    throw ConfigError("ModelConfig: frames must divide evenly through the time pooling");
  }
  if (gru_features < 2 || gru_features % 2 != 0) {
    throw ConfigError("ModelConfig: gru_features must be even (split across directions)");
  }
  if (sed_dense < 1 || asc_dense1 < 1 || asc_dense2 < 1) {
    throw ConfigError("ModelConfig: dense widths must be positive");
  }
  if (sed_classes < 1 || asc_classes < 1) {
    throw ConfigError("ModelConfig: class counts must be positive");
  }
  if (!(asc_loss_weight > 0.0)) {
    throw ConfigError("ModelConfig: asc_loss_weight must be positive");
  }
}

ModelConfig ModelConfig::Tut20162017() {
  ModelConfig c;
  c.mel_bands = 64;
  c.frames = 500;
  c.kernel_h = c.kernel_w = 3;
  c.shared_filters = 128;
  c.asc_filters = 256;
  c.pooling = {8, 2, 2, 25, 20};
  c.gru_features = 64;
  c.sed_dense = 128;
  c.asc_dense1 = 512;
  c.asc_dense2 = 256;
  c.sed_classes = 25;
  c.asc_classes = 4;
  return c;
}

ModelConfig ModelConfig::TutSed2009() {
  ModelConfig c;
  c.mel_bands = 40;
  c.frames = 1000;
  c.kernel_h = c.kernel_w = 5;
  c.shared_filters = 192;
  c.asc_filters = 96;
  c.pooling = {5, 4, 2, 25, 20};
  c.gru_features = 128;
  c.sed_dense = 128;
  c.asc_dense1 = 512;
  c.asc_dense2 = 256;
  c.sed_classes = 63;
  c.asc_classes = 10;
  return c;
}

const char* TaskModeName(TaskMode mode) {
  switch (mode) {
    case TaskMode::kMtl:
      return "MTL";
    case TaskMode::kSedOnly:
      return "SED";
    case TaskMode::kAscOnly:
      return "ASC";
  }
  throw ConfigError("TaskModeName: unknown mode");
}

TaskMode TaskModeFromName(const std::string& name) {
  if (name == "MTL" || name == "mtl") return TaskMode::kMtl;
  if (name == "SED" || name == "sed") return TaskMode::kSedOnly;
  if (name == "ASC" || name == "asc") return TaskMode::kAscOnly;
  throw ParseError("unknown task mode: " + name);
}

MtlNetwork::MtlNetwork(const ModelConfig& config, TaskMode mode, int input_channels)
    : config_(config), mode_(mode), input_channels_(input_channels) {
  config_.Validate();
  if (input_channels < 1) throw ConfigError("MtlNetwork: input_channels must be >= 1");

  size_t in_ch = static_cast<size_t>(input_channels);
  for (int i = 0; i < 3; ++i) {
    shared_.emplace_back(in_ch, config_.shared_filters, config_.kernel_h,
                         config_.kernel_w, config_.pooling[i]);
    in_ch = static_cast<size_t>(config_.shared_filters);
  }
  if (mode_ != TaskMode::kAscOnly) {
    sed_.emplace(gru_input_features(), config_.gru_features, config_.sed_dense,
                 config_.sed_classes);
  }
  if (mode_ != TaskMode::kSedOnly) {
    asc_.emplace(config_);
  }
}

size_t MtlNetwork::gru_input_features() const {
  return static_cast<size_t>(config_.shared_filters) * config_.mel_after_pooling();
}

void MtlNetwork::InitParams(Rng* rng) {
  for (auto& block : shared_) {
    block.conv.Init(rng);
    block.bn.Init(rng);
  }
  if (sed_) {
    sed_->gru.Init(rng);
    sed_->fc1.Init(rng);
    sed_->fc2.Init(rng);
  }
  if (asc_) {
    asc_->conv1.Init(rng);
    asc_->conv2.Init(rng);
    asc_->fc1.Init(rng);
    asc_->fc2.Init(rng);
    asc_->fc3.Init(rng);
  }
}

Tensor MtlNetwork::SharedForward(const Tensor& x, bool train) {
  Tensor h = x;
  for (auto& block : shared_) {
    h = block.conv.Forward(h, train);
    h = block.bn.Forward(h, train);
    h = block.relu.Forward(h, train);
    h = block.pool.Forward(h, train);
  }
  return h;
}

Tensor MtlNetwork::SedForward(const Tensor& shared, bool train) {
  const size_t filters = shared.dim(0), t_len = shared.dim(1), mel = shared.dim(2);
  // Per-frame flatten: feature index = filter * mel + band.
  Tensor frames({t_len, filters * mel});
  for (size_t p = 0; p < filters; ++p) {
    for (size_t t = 0; t < t_len; ++t) {
      for (size_t m = 0; m < mel; ++m) {
        frames.at2(t, p * mel + m) = shared.at3(p, t, m);
      }
    }
  }
  Tensor h = sed_->gru.Forward(frames, train);
  h = sed_->fc1.Forward(h, train);
  Tensor logits = sed_->fc2.Forward(h, train);
  Tensor probs(logits.shape);
  for (size_t i = 0; i < logits.numel(); ++i) {
    probs.data[i] = 1.0 / (1.0 + std::exp(-logits.data[i]));
  }
  return probs;
}

Tensor MtlNetwork::AscForward(const Tensor& shared, bool train) {
  Tensor h = asc_->conv1.Forward(shared, train);
  h = asc_->relu1.Forward(h, train);
  h = asc_->pool1.Forward(h, train);
  h = asc_->conv2.Forward(h, train);
  h = asc_->relu2.Forward(h, train);
  h = asc_->pool2.Forward(h, train);
  h = asc_->residual_max.Forward(h, train);

  const size_t filters = h.dim(0), mel = h.dim(2);
  Tensor flat({1, filters * mel});
  for (size_t p = 0; p < filters; ++p) {
    for (size_t m = 0; m < mel; ++m) flat.at2(0, p * mel + m) = h.at3(p, 0, m);
  }
  Tensor d = asc_->fc1.Forward(flat, train);
  d = asc_->fc2.Forward(d, train);
  Tensor logits = asc_->fc3.Forward(d, train);

  // Stable softmax.
  double max_logit = logits.data[0];
  for (double v : logits.data) max_logit = std::max(max_logit, v);
  Tensor probs(logits.shape);
  double denom = 0.0;
  for (size_t i = 0; i < logits.numel(); ++i) {
    probs.data[i] = std::exp(logits.data[i] - max_logit);
    denom += probs.data[i];
  }
  for (auto& v : probs.data) v /= denom;
  return probs;
}

ForwardResult MtlNetwork::Forward(const Tensor& x, bool train) {
  if (x.ndim() != 3 || x.dim(0) != static_cast<size_t>(input_channels_) ||
      x.dim(1) != static_cast<size_t>(config_.frames) ||
      x.dim(2) != static_cast<size_t>(config_.mel_bands)) {
    throw ShapeError("MtlNetwork: input " + x.ShapeString() + " does not match (" +
                     std::to_string(input_channels_) + ", " +
                     std::to_string(config_.frames) + ", " +
                     std::to_string(config_.mel_bands) + ")");
  }
  const Tensor shared = SharedForward(x, train);
  if (train) shared_out_cache_ = shared;

  ForwardResult out;
  if (sed_) {
    out.sed_probs = SedForward(shared, train);
    if (train) sed_probs_cache_ = out.sed_probs;
  }
  if (asc_) {
    out.asc_probs = AscForward(shared, train);
    if (train) asc_probs_cache_ = out.asc_probs;
  }
  return out;
}

void MtlNetwork::Backward(const Tensor& grad_sed_logits, const Tensor& grad_asc_logits) {
  const size_t filters = shared_out_cache_.dim(0);
  const size_t t_len = shared_out_cache_.dim(1);
  const size_t mel = shared_out_cache_.dim(2);
  Tensor grad_shared({filters, t_len, mel});

  if (sed_ && grad_sed_logits.numel() > 0) {
    Tensor g = sed_->fc2.Backward(grad_sed_logits);
    g = sed_->fc1.Backward(g);
    g = sed_->gru.Backward(g);
    for (size_t p = 0; p < filters; ++p) {
      for (size_t t = 0; t < t_len; ++t) {
        for (size_t m = 0; m < mel; ++m) {
          grad_shared.at3(p, t, m) += g.at2(t, p * mel + m);
        }
      }
    }
  }

  if (asc_ && grad_asc_logits.numel() > 0) {
    Tensor g = asc_->fc3.Backward(grad_asc_logits);
    g = asc_->fc2.Backward(g);
    g = asc_->fc1.Backward(g);
    // Un-flatten to P2 x 1 x mel.
    const size_t asc_filters = static_cast<size_t>(config_.asc_filters);
    Tensor g3({asc_filters, 1, mel});
    for (size_t p = 0; p < asc_filters; ++p) {
      for (size_t m = 0; m < mel; ++m) g3.at3(p, 0, m) = g.at2(0, p * mel + m);
    }
    Tensor h = asc_->residual_max.Backward(g3);
    h = asc_->pool2.Backward(h);
    h = asc_->relu2.Backward(h);
    h = asc_->conv2.Backward(h);
    h = asc_->pool1.Backward(h);
    h = asc_->relu1.Backward(h);
    h = asc_->conv1.Backward(h);
    for (size_t i = 0; i < grad_shared.numel(); ++i) grad_shared.data[i] += h.data[i];
  }

  Tensor g = grad_shared;
  for (size_t i = shared_.size(); i-- > 0;) {
    g = shared_[i].pool.Backward(g);
    g = shared_[i].relu.Backward(g);
    g = shared_[i].bn.Backward(g);
    g = shared_[i].conv.Backward(g);
  }
}

void MtlNetwork::ZeroGrads() {
  for (auto& p : Params()) p.grad->Fill(0.0);
}

std::vector<ParamRef> MtlNetwork::Params() {
  std::vector<ParamRef> params;
  for (size_t i = 0; i < shared_.size(); ++i) {
    const std::string prefix = "shared" + std::to_string(i + 1);
    shared_[i].conv.CollectParams(prefix + ".conv", false, &params);
    shared_[i].bn.CollectParams(prefix + ".bn", false, &params);
  }
  if (sed_) {
    sed_->gru.CollectParams("sed.gru", false, &params);
    sed_->fc1.CollectParams("sed.fc1", false, &params);
    sed_->fc2.CollectParams("sed.fc2", false, &params);
  }
  if (asc_) {
    asc_->conv1.CollectParams("asc.conv1", true, &params);
    asc_->conv2.CollectParams("asc.conv2", true, &params);
    asc_->fc1.CollectParams("asc.fc1", true, &params);
    asc_->fc2.CollectParams("asc.fc2", true, &params);
    asc_->fc3.CollectParams("asc.fc3", true, &params);
  }
  return params;
}

std::vector<StateRef> MtlNetwork::States() {
  std::vector<StateRef> states;
  for (size_t i = 0; i < shared_.size(); ++i) {
    shared_[i].bn.CollectState("shared" + std::to_string(i + 1) + ".bn", &states);
  }
  return states;
}

// ---------------------------------------------------------------------------
// Loss

namespace {

inline double Clamp01(double p) {
  return std::min(std::max(p, kProbClamp), 1.0 - kProbClamp);
}

}  // namespace

LossReport ComputeLoss(const ForwardResult& out, const BinaryMatrix& sed_targets,
                       const std::vector<uint8_t>& scene_target, int valid_frames,
                       double asc_loss_weight) {
  LossReport report;

  if (out.sed_probs.numel() > 0) {
    const size_t t_len = out.sed_probs.dim(0);
    const size_t classes = out.sed_probs.dim(1);
    if (sed_targets.rows != t_len || sed_targets.cols != classes) {
      throw ShapeError("ComputeLoss: detection target shape mismatch");
    }
    const size_t valid = std::min<size_t>(t_len, static_cast<size_t>(valid_frames));
    if (valid > 0) {
      double acc = 0.0;
      for (size_t n = 0; n < valid; ++n) {
        for (size_t c = 0; c < classes; ++c) {
          const double p = Clamp01(out.sed_probs.at2(n, c));
          const double y = sed_targets.at(n, c);
          acc -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
        }
      }
      report.sed_loss = acc / (static_cast<double>(valid) * classes);
    }
  }

  if (out.asc_probs.numel() > 0) {
    if (scene_target.size() != out.asc_probs.numel()) {
      throw ShapeError("ComputeLoss: scene target length mismatch");
    }
    double acc = 0.0;
    for (size_t c = 0; c < scene_target.size(); ++c) {
      if (scene_target[c]) acc -= std::log(Clamp01(out.asc_probs.data[c]));
    }
    report.asc_loss = acc;
  }

  report.total = report.sed_loss + asc_loss_weight * report.asc_loss;
  return report;
}

void LossGradients(const ForwardResult& out, const BinaryMatrix& sed_targets,
                   const std::vector<uint8_t>& scene_target, int valid_frames,
                   double asc_loss_weight, Tensor* grad_sed_logits,
                   Tensor* grad_asc_logits) {
  *grad_sed_logits = Tensor();
  *grad_asc_logits = Tensor();

  if (out.sed_probs.numel() > 0) {
    const size_t t_len = out.sed_probs.dim(0);
    const size_t classes = out.sed_probs.dim(1);
    *grad_sed_logits = Tensor({t_len, classes});
    const size_t valid = std::min<size_t>(t_len, static_cast<size_t>(valid_frames));
    if (valid > 0) {
      const double scale = 1.0 / (static_cast<double>(valid) * classes);
      for (size_t n = 0; n < valid; ++n) {
        for (size_t c = 0; c < classes; ++c) {
          const double p = out.sed_probs.at2(n, c);
          // Inside the clamp region the loss is flat in the logit.
          if (p <= kProbClamp || p >= 1.0 - kProbClamp) continue;
          grad_sed_logits->at2(n, c) = (p - sed_targets.at(n, c)) * scale;
        }
      }
    }
  }

  if (out.asc_probs.numel() > 0) {
    const size_t classes = out.asc_probs.numel();
    *grad_asc_logits = Tensor({size_t{1}, classes});
    // dL/dp for the clamped cross-entropy, then through the softmax Jacobian.
    std::vector<double> dp(classes, 0.0);
    for (size_t c = 0; c < classes; ++c) {
      const double p = out.asc_probs.data[c];
      if (!scene_target[c]) continue;
      if (p <= kProbClamp || p >= 1.0 - kProbClamp) continue;
      dp[c] = -1.0 / p;
    }
    for (size_t j = 0; j < classes; ++j) {
      double acc = 0.0;
      for (size_t i = 0; i < classes; ++i) {
        const double pi = out.asc_probs.data[i];
        acc += dp[i] * pi * ((i == j ? 1.0 : 0.0) - out.asc_probs.data[j]);
      }
      grad_asc_logits->at2(0, j) = asc_loss_weight * acc;
    }
  }
}

Prediction Predict(MtlNetwork* net, const Tensor& x, double sed_threshold) {
  const ForwardResult out = net->Forward(x, /*train=*/false);
  Prediction pred;
  if (out.sed_probs.numel() > 0) {
    pred.sed = BinaryMatrix(out.sed_probs.dim(0), out.sed_probs.dim(1));
    for (size_t i = 0; i < out.sed_probs.numel(); ++i) {
      pred.sed.data[i] = out.sed_probs.data[i] >= sed_threshold ? 1 : 0;
    }
  }
  if (out.asc_probs.numel() > 0) {
    size_t best = 0;
    for (size_t c = 1; c < out.asc_probs.numel(); ++c) {
      if (out.asc_probs.data[c] > out.asc_probs.data[best]) best = c;
    }
    pred.scene_index = static_cast<int>(best);
  }
  return pred;
}

}  // namespace bsk
