// src/stft.cc

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

#include "bsk/stft.h"

#include <cmath>

#include "bsk/error.h"
#include "bsk/fft.h"

namespace bsk {

std::vector<double> HammingWindow(int length) {
  if (length < 2) throw ConfigError("HammingWindow: length must be >= 2");
  std::vector<double> w(length);
  const double denom = static_cast<double>(length - 1);
  for (int i = 0; i < length; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * static_cast<double>(i) / denom);
  }
  return w;
}

StftConfig StftConfig::ForSampleRate(int sample_rate) {
  if (sample_rate <= 0) throw ConfigError("StftConfig: sample_rate must be positive");
  const int window = static_cast<int>(std::lround(0.040 * sample_rate));
  return FromWindow(window);
}

StftConfig StftConfig::FromWindow(int window_length) {
  StftConfig cfg;
  cfg.window_length = window_length;
  cfg.hop_length = window_length / 2;
  cfg.fft_size = static_cast<int>(NextPowerOfTwo(static_cast<size_t>(window_length)));
  cfg.Validate();
  return cfg;
}

void StftConfig::Validate() const {
  if (window_length < 2) throw ConfigError("StftConfig: window_length must be >= 2");
  if (hop_length != window_length / 2) {
    throw ConfigError("StftConfig: hop_length must equal window_length / 2");
  }
  if (fft_size < window_length || !IsPowerOfTwo(static_cast<size_t>(fft_size))) {
    throw ConfigError("StftConfig: fft_size must be a power of two >= window_length");
  }
}

size_t StftConfig::NumFrames(size_t signal_length) const {
  if (signal_length < static_cast<size_t>(window_length)) return 0;
  return 1 + (signal_length - static_cast<size_t>(window_length)) /
                 static_cast<size_t>(hop_length);
}

ComplexSpectrogram StftChannel(const std::vector<double>& samples,
                               const StftConfig& cfg) {
  cfg.Validate();
  if (samples.size() < static_cast<size_t>(cfg.window_length)) {
    throw InputError("Stft: clip shorter than one analysis window");
  }
  const size_t frames = cfg.NumFrames(samples.size());
  const std::vector<double> window = HammingWindow(cfg.window_length);

  ComplexSpectrogram spec;
  spec.num_frames = frames;
  spec.num_bins = static_cast<size_t>(cfg.num_bins());
  spec.fft_size = cfg.fft_size;
  spec.bins.resize(frames * spec.num_bins);

  std::vector<std::complex<double>> buffer(static_cast<size_t>(cfg.fft_size));
  for (size_t n = 0; n < frames; ++n) {
    const size_t start = n * static_cast<size_t>(cfg.hop_length);
    for (int i = 0; i < cfg.window_length; ++i) {
      buffer[i] = samples[start + static_cast<size_t>(i)] * window[i];
    }
    for (int i = cfg.window_length; i < cfg.fft_size; ++i) buffer[i] = 0.0;
    Fft(&buffer, /*inverse=*/false);
    for (size_t k = 0; k < spec.num_bins; ++k) spec.at(n, k) = buffer[k];
  }
  return spec;
}

std::vector<ComplexSpectrogram> Stft(const AudioClip& clip, const StftConfig& cfg) {
  std::vector<ComplexSpectrogram> out;
  out.reserve(clip.channels.size());
  for (const auto& channel : clip.channels) out.push_back(StftChannel(channel, cfg));
  return out;
}

}  // namespace bsk
