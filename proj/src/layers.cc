// src/layers.cc

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

#include "bsk/layers.h"

#include <algorithm>
#include <cmath>

#include "bsk/error.h"

namespace bsk {

namespace {

inline double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void CheckRank3(const Tensor& x, const char* who) {
  if (x.ndim() != 3) throw ShapeError(std::string(who) + ": expected a rank-3 tensor");
}

// Output index range [lo, hi) for which idx + offset stays inside [0, len).
// Empty when the kernel tap falls off the plane entirely.
struct TapRange {
  size_t lo = 0;
  size_t hi = 0;
  bool empty() const { return hi <= lo; }
};

TapRange ValidRange(long long offset, size_t len) {
  const long long lo = offset < 0 ? -offset : 0;
  const long long hi = offset > 0 ? static_cast<long long>(len) - offset
                                  : static_cast<long long>(len);
  TapRange range;
  if (hi > lo) {
    range.lo = static_cast<size_t>(lo);
    range.hi = static_cast<size_t>(hi);
  }
  return range;
}

}  // namespace

void GlorotInit(Tensor* w, size_t fan_in, size_t fan_out, Rng* rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (auto& v : w->data) v = rng->Uniform(-limit, limit);
}

// ---------------------------------------------------------------------------
// Conv2d

Conv2d::Conv2d(size_t in_channels, size_t out_channels, size_t kernel_h,
               size_t kernel_w)
    : weight({out_channels, in_channels, kernel_h, kernel_w}),
      bias({out_channels}),
      grad_weight({out_channels, in_channels, kernel_h, kernel_w}),
      grad_bias({out_channels}),
      in_channels_(in_channels),
      out_channels_(out_channels),
      kernel_h_(kernel_h),
      kernel_w_(kernel_w) {}

void Conv2d::Init(Rng* rng) {
  GlorotInit(&weight, in_channels_ * kernel_h_ * kernel_w_,
             out_channels_ * kernel_h_ * kernel_w_, rng);
  bias.Fill(0.0);
}

Tensor Conv2d::Forward(const Tensor& x, bool train) {
  CheckRank3(x, "Conv2d");
  if (x.dim(0) != in_channels_) {
    throw ShapeError("Conv2d: input has " + std::to_string(x.dim(0)) +
                     " channels, layer expects " + std::to_string(in_channels_));
  }
  const size_t t_len = x.dim(1), m_len = x.dim(2);
  const size_t pad_t = (kernel_h_ - 1) / 2;
  const size_t pad_m = (kernel_w_ - 1) / 2;

  Tensor out({out_channels_, t_len, m_len});
  for (size_t p = 0; p < out_channels_; ++p) {
    double* out_plane = &out.data[p * t_len * m_len];
    const double b = bias.data[p];
    for (size_t i = 0; i < t_len * m_len; ++i) out_plane[i] = b;

    for (size_t c = 0; c < in_channels_; ++c) {
      const double* in_plane = &x.data[c * t_len * m_len];
      for (size_t ky = 0; ky < kernel_h_; ++ky) {
        const long long dy = static_cast<long long>(ky) - static_cast<long long>(pad_t);
        const TapRange tr = ValidRange(dy, t_len);
        if (tr.empty()) continue;
        for (size_t kx = 0; kx < kernel_w_; ++kx) {
          const long long dx = static_cast<long long>(kx) - static_cast<long long>(pad_m);
          const TapRange mr = ValidRange(dx, m_len);
          if (mr.empty()) continue;
          const double w =
              weight.data[((p * in_channels_ + c) * kernel_h_ + ky) * kernel_w_ + kx];
          if (w == 0.0) continue;
          for (size_t t = tr.lo; t < tr.hi; ++t) {
            const double* src = in_plane + (t + dy) * m_len + dx;
            double* dst = out_plane + t * m_len;
            for (size_t m = mr.lo; m < mr.hi; ++m) dst[m] += w * src[m];
          }
        }
      }
    }
  }
  if (train) x_cache_ = x;
  return out;
}

Tensor Conv2d::Backward(const Tensor& grad_out) {
  const Tensor& x = x_cache_;
  const size_t t_len = x.dim(1), m_len = x.dim(2);
  const size_t pad_t = (kernel_h_ - 1) / 2;
  const size_t pad_m = (kernel_w_ - 1) / 2;

  Tensor grad_in({in_channels_, t_len, m_len});
  for (size_t p = 0; p < out_channels_; ++p) {
    const double* g_plane = &grad_out.data[p * t_len * m_len];
    double gb = 0.0;
    for (size_t i = 0; i < t_len * m_len; ++i) gb += g_plane[i];
    grad_bias.data[p] += gb;

    for (size_t c = 0; c < in_channels_; ++c) {
      const double* in_plane = &x.data[c * t_len * m_len];
      double* gin_plane = &grad_in.data[c * t_len * m_len];
      for (size_t ky = 0; ky < kernel_h_; ++ky) {
        const long long dy = static_cast<long long>(ky) - static_cast<long long>(pad_t);
        const TapRange tr = ValidRange(dy, t_len);
        if (tr.empty()) continue;
        for (size_t kx = 0; kx < kernel_w_; ++kx) {
          const long long dx = static_cast<long long>(kx) - static_cast<long long>(pad_m);
          const TapRange mr = ValidRange(dx, m_len);
          if (mr.empty()) continue;
          const size_t w_idx =
              ((p * in_channels_ + c) * kernel_h_ + ky) * kernel_w_ + kx;
          const double w = weight.data[w_idx];
          double gw = 0.0;
          for (size_t t = tr.lo; t < tr.hi; ++t) {
            const double* src = in_plane + (t + dy) * m_len + dx;
            double* gin = gin_plane + (t + dy) * m_len + dx;
            const double* g = g_plane + t * m_len;
            for (size_t m = mr.lo; m < mr.hi; ++m) {
              gw += g[m] * src[m];
              gin[m] += w * g[m];
            }
          }
          grad_weight.data[w_idx] += gw;
        }
      }
    }
  }
  return grad_in;
}

void Conv2d::CollectParams(const std::string& prefix, bool asc,
                           std::vector<ParamRef>* out) {
  out->push_back({prefix + ".weight", &weight, &grad_weight, asc});
  out->push_back({prefix + ".bias", &bias, &grad_bias, asc});
}

// ---------------------------------------------------------------------------
// BatchNorm2d

BatchNorm2d::BatchNorm2d(size_t channels)
    : gamma({channels}),
      beta({channels}),
      grad_gamma({channels}),
      grad_beta({channels}),
      running_mean({channels}),
      running_var({channels}),
      channels_(channels) {
  gamma.Fill(1.0);
  running_var.Fill(1.0);
}

void BatchNorm2d::Init(Rng* rng) {
  (void)rng;
  gamma.Fill(1.0);
  beta.Fill(0.0);
  running_mean.Fill(0.0);
  running_var.Fill(1.0);
}

Tensor BatchNorm2d::Forward(const Tensor& x, bool train) {
  CheckRank3(x, "BatchNorm2d");
  if (x.dim(0) != channels_) throw ShapeError("BatchNorm2d: channel mismatch");
  const size_t plane = x.dim(1) * x.dim(2);
  if (plane == 0) throw ShapeError("BatchNorm2d: empty feature map");

  Tensor out(x.shape);
  if (train) {
    centered_cache_ = Tensor(x.shape);
    inv_std_.assign(channels_, 0.0);
  }

  for (size_t c = 0; c < channels_; ++c) {
    const double* in_plane = &x.data[c * plane];
    double* out_plane = &out.data[c * plane];
    double mean, inv_std;
    if (train) {
      double sum = 0.0;
      for (size_t i = 0; i < plane; ++i) sum += in_plane[i];
      mean = sum / static_cast<double>(plane);
      double var_sum = 0.0;
      for (size_t i = 0; i < plane; ++i) {
        const double d = in_plane[i] - mean;
        var_sum += d * d;
      }
      const double var = var_sum / static_cast<double>(plane);
      inv_std = 1.0 / std::sqrt(var + epsilon);
      running_mean.data[c] = momentum * running_mean.data[c] + (1.0 - momentum) * mean;
      running_var.data[c] = momentum * running_var.data[c] + (1.0 - momentum) * var;
      double* cc = &centered_cache_.data[c * plane];
      for (size_t i = 0; i < plane; ++i) cc[i] = in_plane[i] - mean;
      inv_std_[c] = inv_std;
    } else {
      mean = running_mean.data[c];
      inv_std = 1.0 / std::sqrt(running_var.data[c] + epsilon);
    }
    const double g = gamma.data[c], b = beta.data[c];
    for (size_t i = 0; i < plane; ++i) {
      out_plane[i] = g * (in_plane[i] - mean) * inv_std + b;
    }
  }
  return out;
}

Tensor BatchNorm2d::Backward(const Tensor& grad_out) {
  const size_t plane = grad_out.dim(1) * grad_out.dim(2);
  const double n = static_cast<double>(plane);
  Tensor grad_in(grad_out.shape);

  for (size_t c = 0; c < channels_; ++c) {
    const double* g = &grad_out.data[c * plane];
    const double* xc = &centered_cache_.data[c * plane];
    double* gi = &grad_in.data[c * plane];
    const double inv_std = inv_std_[c];
    const double gam = gamma.data[c];

    double sum_g = 0.0, sum_g_xhat = 0.0, sum_xc = 0.0;
    for (size_t i = 0; i < plane; ++i) {
      sum_g += g[i];
      sum_g_xhat += g[i] * xc[i] * inv_std;
      sum_xc += xc[i];
    }
    grad_beta.data[c] += sum_g;
    grad_gamma.data[c] += sum_g_xhat;

    // d/dx of gamma * (x - mean) / sqrt(var + eps) with batch statistics.
    double dvar = 0.0;
    for (size_t i = 0; i < plane; ++i) {
      dvar += g[i] * gam * xc[i];
    }
    dvar *= -0.5 * inv_std * inv_std * inv_std;
    const double dmean = -inv_std * gam * sum_g + dvar * (-2.0 / n) * sum_xc;
    for (size_t i = 0; i < plane; ++i) {
      gi[i] = g[i] * gam * inv_std + dvar * 2.0 * xc[i] / n + dmean / n;
    }
  }
  return grad_in;
}

void BatchNorm2d::CollectParams(const std::string& prefix, bool asc,
                                std::vector<ParamRef>* out) {
  out->push_back({prefix + ".gamma", &gamma, &grad_gamma, asc});
  out->push_back({prefix + ".beta", &beta, &grad_beta, asc});
}

void BatchNorm2d::CollectState(const std::string& prefix,
                               std::vector<StateRef>* out) {
  out->push_back({prefix + ".running_mean", &running_mean});
  out->push_back({prefix + ".running_var", &running_var});
}

// ---------------------------------------------------------------------------
// Relu

Tensor Relu::Forward(const Tensor& x, bool train) {
  Tensor out(x.shape);
  if (train) active_.assign(x.numel(), 0);
  for (size_t i = 0; i < x.numel(); ++i) {
    if (x.data[i] > 0.0) {
      out.data[i] = x.data[i];
      if (train) active_[i] = 1;
    }
  }
  return out;
}

Tensor Relu::Backward(const Tensor& grad_out) {
  Tensor grad_in(grad_out.shape);
  for (size_t i = 0; i < grad_out.numel(); ++i) {
    grad_in.data[i] = active_[i] ? grad_out.data[i] : 0.0;
  }
  return grad_in;
}

// ---------------------------------------------------------------------------
// MaxPool

MaxPool::MaxPool(PoolAxis axis, size_t factor) : axis_(axis), factor_(factor) {
  if (factor_ == 0) throw ConfigError("MaxPool: factor must be positive");
}

Tensor MaxPool::Forward(const Tensor& x, bool train) {
  CheckRank3(x, "MaxPool");
  const size_t axis_len = axis_ == PoolAxis::kTime ? x.dim(1) : x.dim(2);
  if (axis_len % factor_ != 0) {
    throw ShapeError("MaxPool: axis length " + std::to_string(axis_len) +
                     " not divisible by factor " + std::to_string(factor_));
  }
  if (factor_ == 1) {
    if (train) {
      in_shape_ = x.shape;
      argmax_.resize(x.numel());
      for (size_t i = 0; i < x.numel(); ++i) argmax_[i] = i;
    }
    return x;
  }

  const size_t channels = x.dim(0), t_len = x.dim(1), m_len = x.dim(2);
  const size_t out_t = axis_ == PoolAxis::kTime ? t_len / factor_ : t_len;
  const size_t out_m = axis_ == PoolAxis::kMel ? m_len / factor_ : m_len;
  Tensor out({channels, out_t, out_m});
  if (train) {
    in_shape_ = x.shape;
    argmax_.assign(out.numel(), 0);
  }

  for (size_t c = 0; c < channels; ++c) {
    for (size_t t = 0; t < out_t; ++t) {
      for (size_t m = 0; m < out_m; ++m) {
        double best = -1e308;
        size_t best_idx = 0;
        for (size_t f = 0; f < factor_; ++f) {
          const size_t src_t = axis_ == PoolAxis::kTime ? t * factor_ + f : t;
          const size_t src_m = axis_ == PoolAxis::kMel ? m * factor_ + f : m;
          const size_t idx = (c * t_len + src_t) * m_len + src_m;
          if (x.data[idx] > best) {
            best = x.data[idx];
            best_idx = idx;
          }
        }
        const size_t out_idx = (c * out_t + t) * out_m + m;
        out.data[out_idx] = best;
        if (train) argmax_[out_idx] = best_idx;
      }
    }
  }
  return out;
}

Tensor MaxPool::Backward(const Tensor& grad_out) {
  Tensor grad_in(in_shape_);
  for (size_t i = 0; i < grad_out.numel(); ++i) {
    grad_in.data[argmax_[i]] += grad_out.data[i];
  }
  return grad_in;
}

// ---------------------------------------------------------------------------
// GlobalMaxTime

Tensor GlobalMaxTime::Forward(const Tensor& x, bool train) {
  CheckRank3(x, "GlobalMaxTime");
  const size_t channels = x.dim(0), t_len = x.dim(1), m_len = x.dim(2);
  Tensor out({channels, 1, m_len});
  if (train) {
    in_shape_ = x.shape;
    argmax_.assign(out.numel(), 0);
  }
  for (size_t c = 0; c < channels; ++c) {
    for (size_t m = 0; m < m_len; ++m) {
      double best = -1e308;
      size_t best_idx = 0;
      for (size_t t = 0; t < t_len; ++t) {
        const size_t idx = (c * t_len + t) * m_len + m;
        if (x.data[idx] > best) {
          best = x.data[idx];
          best_idx = idx;
        }
      }
      const size_t out_idx = c * m_len + m;
      out.data[out_idx] = best;
      if (train) argmax_[out_idx] = best_idx;
    }
  }
  return out;
}

Tensor GlobalMaxTime::Backward(const Tensor& grad_out) {
  Tensor grad_in(in_shape_);
  for (size_t i = 0; i < grad_out.numel(); ++i) {
    grad_in.data[argmax_[i]] += grad_out.data[i];
  }
  return grad_in;
}

// ---------------------------------------------------------------------------
// Dense

Dense::Dense(size_t in_features, size_t out_features)
    : weight({out_features, in_features}),
      bias({out_features}),
      in_features_(in_features),
      out_features_(out_features),
      grad_weight_({out_features, in_features}),
      grad_bias_({out_features}) {}

void Dense::Init(Rng* rng) {
  GlorotInit(&weight, in_features_, out_features_, rng);
  bias.Fill(0.0);
}

Tensor Dense::Forward(const Tensor& x, bool train) {
  if (x.ndim() != 2 || x.dim(1) != in_features_) {
    throw ShapeError("Dense: expected rows x " + std::to_string(in_features_) +
                     ", got " + x.ShapeString());
  }
  const size_t rows = x.dim(0);
  Tensor out({rows, out_features_});
  for (size_t t = 0; t < rows; ++t) {
    const double* xin = &x.data[t * in_features_];
    double* y = &out.data[t * out_features_];
    for (size_t o = 0; o < out_features_; ++o) {
      const double* w = &weight.data[o * in_features_];
      double acc = bias.data[o];
      for (size_t i = 0; i < in_features_; ++i) acc += w[i] * xin[i];
      y[o] = acc;
    }
  }
  if (train) x_cache_ = x;
  return out;
}

Tensor Dense::Backward(const Tensor& grad_out) {
  const Tensor& x = x_cache_;
  const size_t rows = x.dim(0);
  Tensor grad_in({rows, in_features_});
  for (size_t t = 0; t < rows; ++t) {
    const double* g = &grad_out.data[t * out_features_];
    const double* xin = &x.data[t * in_features_];
    double* gi = &grad_in.data[t * in_features_];
    for (size_t o = 0; o < out_features_; ++o) {
      const double go = g[o];
      grad_bias_.data[o] += go;
      double* gw = &grad_weight_.data[o * in_features_];
      const double* w = &weight.data[o * in_features_];
      for (size_t i = 0; i < in_features_; ++i) {
        gw[i] += go * xin[i];
        gi[i] += go * w[i];
      }
    }
  }
  return grad_in;
}

void Dense::CollectParams(const std::string& prefix, bool asc,
                          std::vector<ParamRef>* out) {
  out->push_back({prefix + ".weight", &weight, &grad_weight_, asc});
  out->push_back({prefix + ".bias", &bias, &grad_bias_, asc});
}

// ---------------------------------------------------------------------------
// BiGru

BiGru::BiGru(size_t input_features, size_t hidden_per_direction)
    : input_(input_features), hidden_(hidden_per_direction) {
  for (auto& d : dirs_) {
    d.wz = Tensor({hidden_, input_});
    d.wr = Tensor({hidden_, input_});
    d.wc = Tensor({hidden_, input_});
    d.uz = Tensor({hidden_, hidden_});
    d.ur = Tensor({hidden_, hidden_});
    d.uc = Tensor({hidden_, hidden_});
    d.bz = Tensor({hidden_});
    d.br = Tensor({hidden_});
    d.bc = Tensor({hidden_});
    d.gwz = Tensor({hidden_, input_});
    d.gwr = Tensor({hidden_, input_});
    d.gwc = Tensor({hidden_, input_});
    d.guz = Tensor({hidden_, hidden_});
    d.gur = Tensor({hidden_, hidden_});
    d.guc = Tensor({hidden_, hidden_});
    d.gbz = Tensor({hidden_});
    d.gbr = Tensor({hidden_});
    d.gbc = Tensor({hidden_});
  }
}

void BiGru::Init(Rng* rng) {
  for (auto& d : dirs_) {
    GlorotInit(&d.wz, input_, hidden_, rng);
    GlorotInit(&d.wr, input_, hidden_, rng);
    GlorotInit(&d.wc, input_, hidden_, rng);
    GlorotInit(&d.uz, hidden_, hidden_, rng);
    GlorotInit(&d.ur, hidden_, hidden_, rng);
    GlorotInit(&d.uc, hidden_, hidden_, rng);
    d.bz.Fill(0.0);
    d.br.Fill(0.0);
    d.bc.Fill(0.0);
  }
}

namespace {

// y += A x for an H x W row-major matrix.
inline void MatVecAdd(const Tensor& a, const double* x, size_t w, double* y,
                      size_t h) {
  for (size_t i = 0; i < h; ++i) {
    const double* row = &a.data[i * w];
    double acc = 0.0;
    for (size_t j = 0; j < w; ++j) acc += row[j] * x[j];
    y[i] += acc;
  }
}

// y += A^T g.
inline void MatTVecAdd(const Tensor& a, const double* g, size_t h, double* y,
                       size_t w) {
  for (size_t i = 0; i < h; ++i) {
    const double* row = &a.data[i * w];
    const double gi = g[i];
    for (size_t j = 0; j < w; ++j) y[j] += row[j] * gi;
  }
}

// G += g x^T (outer product accumulate).
inline void OuterAdd(Tensor* grad, const double* g, size_t h, const double* x,
                     size_t w) {
  for (size_t i = 0; i < h; ++i) {
    double* row = &grad->data[i * w];
    const double gi = g[i];
    for (size_t j = 0; j < w; ++j) row[j] += gi * x[j];
  }
}

}  // namespace

Tensor BiGru::Forward(const Tensor& x, bool train) {
  if (x.ndim() != 2 || x.dim(1) != input_) {
    throw ShapeError("BiGru: expected rows x " + std::to_string(input_) + ", got " +
                     x.ShapeString());
  }
  const size_t t_len = x.dim(0);
  Tensor out({t_len, 2 * hidden_});
  if (train) {
    x_cache_ = x;
    caches_[0].assign(t_len, {});
    caches_[1].assign(t_len, {});
  }

  for (int dir = 0; dir < 2; ++dir) {
    const Direction& d = dirs_[dir];
    std::vector<double> h(hidden_, 0.0);
    std::vector<double> az(hidden_), ar(hidden_), ac(hidden_), rh(hidden_);
    for (size_t step = 0; step < t_len; ++step) {
      const size_t t = dir == 0 ? step : t_len - 1 - step;
      const double* xt = &x.data[t * input_];

      for (size_t i = 0; i < hidden_; ++i) az[i] = d.bz.data[i];
      MatVecAdd(d.wz, xt, input_, az.data(), hidden_);
      MatVecAdd(d.uz, h.data(), hidden_, az.data(), hidden_);
      for (size_t i = 0; i < hidden_; ++i) ar[i] = d.br.data[i];
      MatVecAdd(d.wr, xt, input_, ar.data(), hidden_);
      MatVecAdd(d.ur, h.data(), hidden_, ar.data(), hidden_);

      StepCache cache;
      cache.h_prev = h;
      cache.z.resize(hidden_);
      cache.r.resize(hidden_);
      cache.c.resize(hidden_);
      cache.rh.resize(hidden_);
      for (size_t i = 0; i < hidden_; ++i) {
        cache.z[i] = Sigmoid(az[i]);
        cache.r[i] = Sigmoid(ar[i]);
        rh[i] = cache.r[i] * h[i];
        cache.rh[i] = rh[i];
      }
      for (size_t i = 0; i < hidden_; ++i) ac[i] = d.bc.data[i];
      MatVecAdd(d.wc, xt, input_, ac.data(), hidden_);
      MatVecAdd(d.uc, rh.data(), hidden_, ac.data(), hidden_);
      for (size_t i = 0; i < hidden_; ++i) {
        cache.c[i] = std::tanh(ac[i]);
        h[i] = (1.0 - cache.z[i]) * h[i] + cache.z[i] * cache.c[i];
        out.data[t * 2 * hidden_ + dir * hidden_ + i] = h[i];
      }
      if (train) caches_[dir][t] = std::move(cache);
    }
  }
  return out;
}

Tensor BiGru::Backward(const Tensor& grad_out) {
  const Tensor& x = x_cache_;
  const size_t t_len = x.dim(0);
  Tensor grad_in({t_len, input_});

  std::vector<double> dh(hidden_), dz(hidden_), dc(hidden_), dr(hidden_);
  std::vector<double> daz(hidden_), dar(hidden_), dac(hidden_), drh(hidden_);

  for (int dir = 0; dir < 2; ++dir) {
    Direction& d = dirs_[dir];
    std::vector<double> dh_carry(hidden_, 0.0);
    // Walk steps in reverse processing order.
    for (size_t step = t_len; step-- > 0;) {
      const size_t t = dir == 0 ? step : t_len - 1 - step;
      const StepCache& cache = caches_[dir][t];
      const double* xt = &x.data[t * input_];
      const double* gout = &grad_out.data[t * 2 * hidden_ + dir * hidden_];

      for (size_t i = 0; i < hidden_; ++i) {
        dh[i] = gout[i] + dh_carry[i];
        const double z = cache.z[i], c = cache.c[i], hp = cache.h_prev[i];
        dz[i] = dh[i] * (c - hp);
        daz[i] = dz[i] * z * (1.0 - z);
        dc[i] = dh[i] * z;
        dac[i] = dc[i] * (1.0 - c * c);
        dh_carry[i] = dh[i] * (1.0 - z);
      }

      OuterAdd(&d.gwc, dac.data(), hidden_, xt, input_);
      OuterAdd(&d.guc, dac.data(), hidden_, cache.rh.data(), hidden_);
      for (size_t i = 0; i < hidden_; ++i) d.gbc.data[i] += dac[i];

      std::fill(drh.begin(), drh.end(), 0.0);
      MatTVecAdd(d.uc, dac.data(), hidden_, drh.data(), hidden_);
      for (size_t i = 0; i < hidden_; ++i) {
        dr[i] = drh[i] * cache.h_prev[i];
        dh_carry[i] += drh[i] * cache.r[i];
        dar[i] = dr[i] * cache.r[i] * (1.0 - cache.r[i]);
      }

      OuterAdd(&d.gwr, dar.data(), hidden_, xt, input_);
      OuterAdd(&d.gur, dar.data(), hidden_, cache.h_prev.data(), hidden_);
      OuterAdd(&d.gwz, daz.data(), hidden_, xt, input_);
      OuterAdd(&d.guz, daz.data(), hidden_, cache.h_prev.data(), hidden_);
      for (size_t i = 0; i < hidden_; ++i) {
        d.gbr.data[i] += dar[i];
        d.gbz.data[i] += daz[i];
      }
      MatTVecAdd(d.ur, dar.data(), hidden_, dh_carry.data(), hidden_);
      MatTVecAdd(d.uz, daz.data(), hidden_, dh_carry.data(), hidden_);

      double* gx = &grad_in.data[t * input_];
      MatTVecAdd(d.wz, daz.data(), hidden_, gx, input_);
      MatTVecAdd(d.wr, dar.data(), hidden_, gx, input_);
      MatTVecAdd(d.wc, dac.data(), hidden_, gx, input_);
    }
  }
  return grad_in;
}

void BiGru::CollectParams(const std::string& prefix, bool asc,
                          std::vector<ParamRef>* out) {
  const char* dir_name[2] = {"fwd", "bwd"};
  for (int i = 0; i < 2; ++i) {
    Direction& d = dirs_[i];
    const std::string p = prefix + "." + dir_name[i];
    out->push_back({p + ".wz", &d.wz, &d.gwz, asc});
    out->push_back({p + ".wr", &d.wr, &d.gwr, asc});
    out->push_back({p + ".wc", &d.wc, &d.gwc, asc});
    out->push_back({p + ".uz", &d.uz, &d.guz, asc});
    out->push_back({p + ".ur", &d.ur, &d.gur, asc});
    out->push_back({p + ".uc", &d.uc, &d.guc, asc});
    out->push_back({p + ".bz", &d.bz, &d.gbz, asc});
    out->push_back({p + ".br", &d.br, &d.gbr, asc});
    out->push_back({p + ".bc", &d.bc, &d.gbc, asc});
  }
}

}  // namespace bsk
