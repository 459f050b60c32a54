// include/bsk/fft.h

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

#ifndef BSK_FFT_H_
#define BSK_FFT_H_

#include <complex>
#include <vector>

namespace bsk {

// In-place iterative radix-2 transform. Size must be a power of two.
// Forward: X[k] = sum_t x[t] exp(-i 2 pi k t / N).
// Inverse: x[t] = (1/N) sum_k X[k] exp(+i 2 pi k t / N).
void Fft(std::vector<std::complex<double>>* data, bool inverse);

bool IsPowerOfTwo(size_t n);
size_t NextPowerOfTwo(size_t n);

}  // namespace bsk

#endif  // BSK_FFT_H_
