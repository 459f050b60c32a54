// include/bsk/rng.h

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

#ifndef BSK_RNG_H_
#define BSK_RNG_H_

#include <array>
#include <cstdint>
#include <vector>

namespace bsk {

// Seeded xoshiro256** generator with hand-rolled distributions.
// std::uniform_*_distribution is implementation-defined, which would break
// the byte-identical reproducibility contract, so every draw here is
// specified down to the bit.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t NextU64();

  // Uniform in [0, 1) with 53 random bits.
  double Uniform01();

  // Uniform in [lo, hi).
  double Uniform(double lo, double hi);

  // Standard normal via Box-Muller; the spare deviate is cached.
  double Normal();

  // Uniform integer in [0, n), n > 0. Modulo bias is irrelevant here.
  uint64_t Bounded(uint64_t n);

  // Fisher-Yates.
  template <typename T>
  void Shuffle(std::vector<T>* v) {
    if (v->empty()) return;
    for (size_t i = v->size() - 1; i > 0; --i) {
      size_t j = static_cast<size_t>(Bounded(i + 1));
      std::swap((*v)[i], (*v)[j]);
    }
  }

  // Independent stream derived from the original seed and a tag.
  // Forking does not disturb this generator's state.
  Rng Fork(uint64_t tag) const;

 private:
  uint64_t seed_;
  std::array<uint64_t, 4> state_;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

}  // namespace bsk

#endif  // BSK_RNG_H_
