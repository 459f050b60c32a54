// include/bsk/stft.h

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

#ifndef BSK_STFT_H_
#define BSK_STFT_H_

#include <complex>
#include <vector>

#include "bsk/audio.h"

namespace bsk {

// Hamming window w[i] = 0.54 - 0.46 cos(2 pi i / (length - 1)).
// length < 2 is a ConfigError.
std::vector<double> HammingWindow(int length);

// Framing parameters: 40 ms Hamming frames, 50% overlap, zero-padded to the
// next power of two. Frames start at sample 0 with no centering.
struct StftConfig {
  int window_length = 0;  // samples
  int hop_length = 0;     // window_length / 2
  int fft_size = 0;       // smallest power of two >= window_length

  static StftConfig ForSampleRate(int sample_rate);
  static StftConfig FromWindow(int window_length);

  int num_bins() const { return fft_size / 2 + 1; }
  // Frame count for a signal of the given length; 0 when too short.
  size_t NumFrames(size_t signal_length) const;
  void Validate() const;
};

// One-sided complex spectrogram of a single channel, row-major frames x bins.
struct ComplexSpectrogram {
  size_t num_frames = 0;
  size_t num_bins = 0;
  int fft_size = 0;
  std::vector<std::complex<double>> bins;

  std::complex<double>& at(size_t frame, size_t bin) {
    return bins[frame * num_bins + bin];
  }
  const std::complex<double>& at(size_t frame, size_t bin) const {
    return bins[frame * num_bins + bin];
  }
};

// Windowed one-sided STFT of every channel. Clips shorter than one window
// are an InputError.
std::vector<ComplexSpectrogram> Stft(const AudioClip& clip, const StftConfig& cfg);

// Single-channel variant operating on a raw sample buffer.
ComplexSpectrogram StftChannel(const std::vector<double>& samples,
                               const StftConfig& cfg);

}  // namespace bsk

#endif  // BSK_STFT_H_
