// src/features.cc

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

#include "bsk/features.h"

#include <cmath>
#include <complex>

#include "bsk/error.h"
#include "bsk/fft.h"

namespace bsk {

int FeatureSetChannels(FeatureSet set) {
  switch (set) {
    case FeatureSet::kMel1ch:
      return 1;
    case FeatureSet::kMel2ch:
      return 2;
    case FeatureSet::kMelPhase:
      return 4;
    case FeatureSet::kMelIpd:
      return 3;
    case FeatureSet::kMelSinCos:
      return 4;
    case FeatureSet::kMelGcc:
      return 3;
    case FeatureSet::kMelIld:
      return 3;
  }
  throw ConfigError("FeatureSetChannels: unknown feature set");
}

const char* FeatureSetName(FeatureSet set) {
  switch (set) {
    case FeatureSet::kMel1ch:
      return "mel1ch";
    case FeatureSet::kMel2ch:
      return "mel2ch";
    case FeatureSet::kMelPhase:
      return "mel_phase";
    case FeatureSet::kMelIpd:
      return "mel_ipd";
    case FeatureSet::kMelSinCos:
      return "mel_sincos";
    case FeatureSet::kMelGcc:
      return "mel_gcc";
    case FeatureSet::kMelIld:
      return "mel_ild";
  }
  throw ConfigError("FeatureSetName: unknown feature set");
}

FeatureSet FeatureSetFromName(const std::string& name) {
  for (int i = 0; i <= 6; ++i) {
    const FeatureSet set = static_cast<FeatureSet>(i);
    if (name == FeatureSetName(set)) return set;
  }
  throw ParseError("unknown feature set name: " + name);
}

namespace {

void CheckSameShape(const ComplexMelSpectrogram& a, const ComplexMelSpectrogram& b,
                    const char* op) {
  if (a.num_frames != b.num_frames || a.num_filters != b.num_filters) {
    throw ShapeError(std::string(op) + ": left/right mel spectrogram shapes differ");
  }
}

}  // namespace

RealMatrix LogMel(const ComplexMelSpectrogram& xmel) {
  RealMatrix out(xmel.num_frames, xmel.num_filters);
  for (size_t i = 0; i < xmel.bins.size(); ++i) {
    out.data[i] = std::log(std::abs(xmel.bins[i]) + kFeatureEpsilon);
  }
  return out;
}

RealMatrix Ild(const ComplexMelSpectrogram& left, const ComplexMelSpectrogram& right) {
  CheckSameShape(left, right, "Ild");
  RealMatrix out(left.num_frames, left.num_filters);
  for (size_t i = 0; i < left.bins.size(); ++i) {
    out.data[i] = (std::abs(left.bins[i]) + kFeatureEpsilon) /
                  (std::abs(right.bins[i]) + kFeatureEpsilon);
  }
  return out;
}

namespace {

inline double ArgCanonical(const std::complex<double>& z) {
  if (z.real() == 0.0 && z.imag() == 0.0) return 0.0;
  double a = std::atan2(z.imag(), z.real());
  // atan2 reaches -pi only for negative-zero imaginary parts; fold it onto
  // the (-pi, pi] representative.
  if (a == -M_PI) a = M_PI;
  return a;
}

}  // namespace

double WrapAngle(double radians) {
  double w = std::fmod(radians + M_PI, 2.0 * M_PI);
  if (w <= 0.0) w += 2.0 * M_PI;
  return w - M_PI;
}

RealMatrix Phase(const ComplexMelSpectrogram& xmel) {
  RealMatrix out(xmel.num_frames, xmel.num_filters);
  for (size_t i = 0; i < xmel.bins.size(); ++i) {
    out.data[i] = ArgCanonical(xmel.bins[i]);
  }
  return out;
}

RealMatrix Ipd(const ComplexMelSpectrogram& left, const ComplexMelSpectrogram& right) {
  CheckSameShape(left, right, "Ipd");
  RealMatrix out(left.num_frames, left.num_filters);
  for (size_t i = 0; i < left.bins.size(); ++i) {
    out.data[i] = WrapAngle(ArgCanonical(left.bins[i]) - ArgCanonical(right.bins[i]));
  }
  return out;
}

void SinCosIpd(const RealMatrix& ipd, RealMatrix* si, RealMatrix* ci) {
  *si = RealMatrix(ipd.rows, ipd.cols);
  *ci = RealMatrix(ipd.rows, ipd.cols);
  for (size_t i = 0; i < ipd.data.size(); ++i) {
    si->data[i] = std::sin(ipd.data[i]);
    ci->data[i] = std::cos(ipd.data[i]);
  }
}

GccLagMap GccLagMap::Centered(int lag_count) {
  if (lag_count < 1) throw ConfigError("GccLagMap: lag_count must be positive");
  GccLagMap map;
  map.lag_values.resize(lag_count);
  const int lo = -(lag_count / 2);
  for (int i = 0; i < lag_count; ++i) map.lag_values[i] = lo + i;
  return map;
}

RealMatrix GccPhat(const ComplexSpectrogram& left, const ComplexSpectrogram& right,
                   int lag_count, GccLagMap* lag_map) {
  if (left.num_frames != right.num_frames || left.num_bins != right.num_bins) {
    throw ShapeError("GccPhat: left/right spectrogram shapes differ");
  }
  if (lag_count > left.fft_size) {
    throw ConfigError("GccPhat: lag_count exceeds the FFT size");
  }
  const GccLagMap map = GccLagMap::Centered(lag_count);
  if (lag_map != nullptr) *lag_map = map;

  const size_t fft_size = static_cast<size_t>(left.fft_size);
  const size_t bins = left.num_bins;
  RealMatrix out(left.num_frames, static_cast<size_t>(lag_count));

  std::vector<std::complex<double>> cross(fft_size);
  for (size_t n = 0; n < left.num_frames; ++n) {
    // PHAT-normalized one-sided cross-spectrum, rebuilt to the full
    // Hermitian spectrum so the inverse transform is real.
    for (size_t k = 0; k < bins; ++k) {
      const std::complex<double> l = left.at(n, k);
      const std::complex<double> r = right.at(n, k);
      const std::complex<double> c = l * std::conj(r);
      cross[k] = c / (std::abs(l) * std::abs(r) + kFeatureEpsilon);
    }
    for (size_t k = bins; k < fft_size; ++k) {
      cross[k] = std::conj(cross[fft_size - k]);
    }
    Fft(&cross, /*inverse=*/true);

    // idft[t] is the circular correlation sum_u l[u] r[u - t]; reading it at
    // (N - d) mod N yields the sum_u l[u] r[u + d] convention, where
    // positive d means the right channel lags.
    for (int i = 0; i < lag_count; ++i) {
      const int d = map.lag_values[i];
      const size_t idx =
          static_cast<size_t>((static_cast<int>(fft_size) - d) % static_cast<int>(fft_size));
      out.at(n, static_cast<size_t>(i)) = cross[idx].real();
    }
  }
  return out;
}

FeatureConfig FeatureConfig::ForClip(int sample_rate, int mel_bands) {
  FeatureConfig cfg;
  cfg.stft = StftConfig::ForSampleRate(sample_rate);
  cfg.mel_bands = mel_bands;
  cfg.f_min = 0.0;
  cfg.f_max = sample_rate / 2.0;
  return cfg;
}

namespace {

void CopyChannel(FeatureTensor* tensor, size_t ch, const RealMatrix& src) {
  if (src.rows != tensor->frames || src.cols != tensor->bands) {
    throw ShapeError("StackFeatures: channel grid mismatch");
  }
  float* dst = &tensor->data[ch * tensor->frames * tensor->bands];
  for (size_t i = 0; i < src.data.size(); ++i) dst[i] = static_cast<float>(src.data[i]);
}

}  // namespace

FeatureTensor StackFeatures(FeatureSet set, const AudioClip& clip,
                            const FeatureConfig& cfg, GccLagMap* lag_map) {
  if (set != FeatureSet::kMel1ch && clip.channel_count() != 2) {
    throw InputError(std::string("StackFeatures: feature set ") + FeatureSetName(set) +
                     " requires a binaural clip");
  }

  const double f_max = cfg.f_max > 0.0 ? cfg.f_max : clip.sample_rate / 2.0;
  const MelFilterbank bank = MakeMelFilterbank(cfg.mel_bands, cfg.stft.num_bins(),
                                               clip.sample_rate, cfg.f_min, f_max);

  FeatureTensor tensor;
  tensor.layout = set;
  tensor.channels = static_cast<uint32_t>(FeatureSetChannels(set));
  tensor.bands = static_cast<uint32_t>(cfg.mel_bands);

  if (set == FeatureSet::kMel1ch) {
    const AudioClip mono = clip.channel_count() == 2 ? MonoDownmix(clip) : clip;
    const ComplexSpectrogram spec = StftChannel(mono.channels[0], cfg.stft);
    const ComplexMelSpectrogram xmel = ComplexMel(spec, bank);
    tensor.frames = static_cast<uint32_t>(spec.num_frames);
    tensor.data.resize(tensor.size());
    CopyChannel(&tensor, 0, LogMel(xmel));
    return tensor;
  }

  const ComplexSpectrogram spec_l = StftChannel(clip.channels[0], cfg.stft);
  const ComplexSpectrogram spec_r = StftChannel(clip.channels[1], cfg.stft);
  const ComplexMelSpectrogram mel_l = ComplexMel(spec_l, bank);
  const ComplexMelSpectrogram mel_r = ComplexMel(spec_r, bank);

  tensor.frames = static_cast<uint32_t>(spec_l.num_frames);
  tensor.data.resize(tensor.size());
  CopyChannel(&tensor, 0, LogMel(mel_l));
  CopyChannel(&tensor, 1, LogMel(mel_r));

  switch (set) {
    case FeatureSet::kMel2ch:
      break;
    case FeatureSet::kMelPhase:
      CopyChannel(&tensor, 2, Phase(mel_l));
      CopyChannel(&tensor, 3, Phase(mel_r));
      break;
    case FeatureSet::kMelIpd:
      CopyChannel(&tensor, 2, Ipd(mel_l, mel_r));
      break;
    case FeatureSet::kMelSinCos: {
      RealMatrix si, ci;
      SinCosIpd(Ipd(mel_l, mel_r), &si, &ci);
      CopyChannel(&tensor, 2, si);
      CopyChannel(&tensor, 3, ci);
      break;
    }
    case FeatureSet::kMelGcc:
      CopyChannel(&tensor, 2, GccPhat(spec_l, spec_r, cfg.mel_bands, lag_map));
      break;
    case FeatureSet::kMelIld:
      CopyChannel(&tensor, 2, Ild(mel_l, mel_r));
      break;
    case FeatureSet::kMel1ch:
      break;  // handled above
  }
  return tensor;
}

}  // namespace bsk
