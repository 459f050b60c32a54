// include/bsk/features.h

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

#ifndef BSK_FEATURES_H_
#define BSK_FEATURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "bsk/audio.h"
#include "bsk/mel.h"
#include "bsk/stft.h"

namespace bsk {

// Magnitude floor and PHAT-normalization guard.
inline constexpr double kFeatureEpsilon = 1e-10;

// The seven network input layouts. Values double as the on-disk layout tag.
enum class FeatureSet : uint8_t {
  kMel1ch = 0,    // logmel of the (L+R)/2 downmix              CH = 1
  kMel2ch = 1,    // logmel L, logmel R                         CH = 2
  kMelPhase = 2,  // logmel L/R + mel-domain phase L/R          CH = 4
  kMelIpd = 3,    // logmel L/R + inter-channel phase diff      CH = 3
  kMelSinCos = 4, // logmel L/R + sin(IPD) + cos(IPD)           CH = 4
  kMelGcc = 5,    // logmel L/R + GCC-PHAT lag map              CH = 3
  kMelIld = 6,    // logmel L/R + level ratio                   CH = 3
};

int FeatureSetChannels(FeatureSet set);
const char* FeatureSetName(FeatureSet set);
FeatureSet FeatureSetFromName(const std::string& name);

// Dense frames x bands real matrix shared by all per-frame features.
struct RealMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& at(size_t r, size_t c) { return data[r * cols + c]; }
  double at(size_t r, size_t c) const { return data[r * cols + c]; }
};

// ln(|X_mel| + eps).
RealMatrix LogMel(const ComplexMelSpectrogram& xmel);

// (|left| + eps) / (|right| + eps), per frame and band.
RealMatrix Ild(const ComplexMelSpectrogram& left, const ComplexMelSpectrogram& right);

// arg(X_mel) in (-pi, pi]; arg(0) is 0.
RealMatrix Phase(const ComplexMelSpectrogram& xmel);

// Phase(left) - Phase(right), wrapped to (-pi, pi].
RealMatrix Ipd(const ComplexMelSpectrogram& left, const ComplexMelSpectrogram& right);

// Element-wise sin and cos of an IPD matrix.
void SinCosIpd(const RealMatrix& ipd, RealMatrix* si, RealMatrix* ci);

// Wraps an angle to (-pi, pi].
double WrapAngle(double radians);

// Signed sample lags kept by GccPhat, ascending, lag 0 at index lag_count/2.
// Positive lag means the right channel trails the left: a clip rendered with
// right = delay(left, d) peaks at lag +d. The convention is pinned by the
// time-domain cross-correlation oracle in the test suite.
struct GccLagMap {
  std::vector<int> lag_values;

  static GccLagMap Centered(int lag_count);
};

// Per-frame GCC-PHAT on the raw (un-melled) spectrograms: the inverse
// transform of X_l conj(X_r) / (|X_l||X_r| + eps), truncated to lag_count
// lags centered on zero.
RealMatrix GccPhat(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
                   int lag_count, GccLagMap* lag_map);

// Network-ready stack, channels x frames x bands, C-order with channels
// outermost, stored as 32-bit floats.
struct FeatureTensor {
  uint32_t channels = 0;
  uint32_t frames = 0;
  uint32_t bands = 0;
  FeatureSet layout = FeatureSet::kMel1ch;
  std::vector<float> data;

  float& at(size_t ch, size_t t, size_t m) {
    return data[(ch * frames + t) * bands + m];
  }
  float at(size_t ch, size_t t, size_t m) const {
    return data[(ch * frames + t) * bands + m];
  }
  size_t size() const {
    return static_cast<size_t>(channels) * frames * bands;
  }
};

struct FeatureConfig {
  StftConfig stft;
  int mel_bands = 64;
  double f_min = 0.0;
  double f_max = 0.0;  // 0 means sample_rate / 2

  static FeatureConfig ForClip(int sample_rate, int mel_bands);
};

// Assembles one layout: runs the STFT + mel projection and stacks the
// layout's channels. Mono clips are accepted only by kMel1ch; every other
// layout needs a binaural clip and throws InputError otherwise.
FeatureTensor StackFeatures(FeatureSet set, const AudioClip& clip,
                            const FeatureConfig& cfg, GccLagMap* lag_map = nullptr);

}  // namespace bsk

#endif  // BSK_FEATURES_H_
