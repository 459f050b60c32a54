// include/bsk/mel.h

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

#ifndef BSK_MEL_H_
#define BSK_MEL_H_

#include <complex>
#include <vector>

#include "bsk/stft.h"

namespace bsk {

// HTK-style mel scale.
double HzToMel(double hz);
double MelToHz(double mel);

// Triangular filterbank, row-major filters x bins. Each row peaks at
// exactly 1 and has at least one nonzero entry.
struct MelFilterbank {
  size_t num_filters = 0;
  size_t num_bins = 0;
  std::vector<double> weights;
  std::vector<double> band_centers_hz;

  double& at(size_t filter, size_t bin) { return weights[filter * num_bins + bin]; }
  double at(size_t filter, size_t bin) const { return weights[filter * num_bins + bin]; }
};

// Builds num_filters peak-normalized triangles with centers equally spaced
// on the mel scale over [f_min, f_max]. num_bins is the one-sided bin count
// of the spectrogram the bank will be applied to; bin k sits at frequency
// k * sample_rate / (2 * (num_bins - 1)). A filter whose triangle captures
// no bin at all makes the bank unusable and raises ConfigError.
MelFilterbank MakeMelFilterbank(int num_filters, int num_bins, double sample_rate,
                                double f_min, double f_max);

// Complex mel projection: the filterbank applied to the complex bins
// themselves, X_mel[n,m] = sum_k X[n,k] H_m[k]. Magnitude pooling happens
// later, in the feature ops, so phase survives this step.
struct ComplexMelSpectrogram {
  size_t num_frames = 0;
  size_t num_filters = 0;
  std::vector<std::complex<double>> bins;

  std::complex<double>& at(size_t frame, size_t filter) {
    return bins[frame * num_filters + filter];
  }
  const std::complex<double>& at(size_t frame, size_t filter) const {
    return bins[frame * num_filters + filter];
  }
};

ComplexMelSpectrogram ComplexMel(const ComplexSpectrogram& spec,
                                 const MelFilterbank& bank);

}  // namespace bsk

#endif  // BSK_MEL_H_
