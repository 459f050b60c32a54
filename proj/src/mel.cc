// src/mel.cc

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

#include "bsk/mel.h"

#include <cmath>
#include <string>

#include "bsk/error.h"

namespace bsk {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank MakeMelFilterbank(int num_filters, int num_bins, double sample_rate,
                                double f_min, double f_max) {
  if (num_filters < 1) throw ConfigError("MelFilterbank: need at least one filter");
  if (num_bins < 2) throw ConfigError("MelFilterbank: need at least two bins");
  if (!(f_min >= 0.0 && f_min < f_max && f_max <= sample_rate / 2.0)) {
    throw ConfigError("MelFilterbank: require 0 <= f_min < f_max <= sample_rate/2");
  }

  const int fft_size = 2 * (num_bins - 1);
  const double mel_lo = HzToMel(f_min);
  const double mel_hi = HzToMel(f_max);

  // M + 2 breakpoints equally spaced in mel; triangle m spans
  // [point m, point m+2] and peaks at point m+1.
  std::vector<double> point_hz(static_cast<size_t>(num_filters) + 2);
  for (int j = 0; j < num_filters + 2; ++j) {
    const double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(j) /
                                    static_cast<double>(num_filters + 1);
    point_hz[j] = MelToHz(mel);
  }

  MelFilterbank bank;
  bank.num_filters = static_cast<size_t>(num_filters);
  bank.num_bins = static_cast<size_t>(num_bins);
  bank.weights.assign(bank.num_filters * bank.num_bins, 0.0);
  bank.band_centers_hz.resize(bank.num_filters);

  for (int m = 0; m < num_filters; ++m) {
    const double left = point_hz[m];
    const double center = point_hz[m + 1];
    const double right = point_hz[m + 2];
    bank.band_centers_hz[m] = center;

    double row_max = 0.0;
    for (int k = 0; k < num_bins; ++k) {
      const double freq = static_cast<double>(k) * sample_rate / fft_size;
      double w = 0.0;
      if (freq >= left && freq <= center && center > left) {
        w = (freq - left) / (center - left);
      } else if (freq > center && freq <= right && right > center) {
        w = (right - freq) / (right - center);
      }
      bank.at(m, k) = w;
      if (w > row_max) row_max = w;
    }
    if (row_max <= 0.0) {
      throw ConfigError("MelFilterbank: filter " + std::to_string(m) +
                        " captures no FFT bin; reduce the filter count");
    }
    // Normalize so the row maximum is exactly 1.
    for (int k = 0; k < num_bins; ++k) bank.at(m, k) /= row_max;
  }
  return bank;
}

ComplexMelSpectrogram ComplexMel(const ComplexSpectrogram& spec,
                                 const MelFilterbank& bank) {
  if (spec.num_bins != bank.num_bins) {
    throw ShapeError("ComplexMel: spectrogram has " + std::to_string(spec.num_bins) +
                     " bins but the filterbank expects " +
                     std::to_string(bank.num_bins));
  }
  ComplexMelSpectrogram out;
  out.num_frames = spec.num_frames;
  out.num_filters = bank.num_filters;
  out.bins.assign(out.num_frames * out.num_filters, {0.0, 0.0});

  for (size_t n = 0; n < spec.num_frames; ++n) {
    const std::complex<double>* row = &spec.bins[n * spec.num_bins];
    for (size_t m = 0; m < bank.num_filters; ++m) {
      const double* w = &bank.weights[m * bank.num_bins];
      std::complex<double> acc{0.0, 0.0};
      for (size_t k = 0; k < spec.num_bins; ++k) {
        if (w[k] != 0.0) acc += row[k] * w[k];
      }
      out.at(n, m) = acc;
    }
  }
  return out;
}

}  // namespace bsk
