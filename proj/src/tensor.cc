// src/tensor.cc

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

#include "bsk/tensor.h"

#include <algorithm>

namespace bsk {

Tensor::Tensor(std::vector<size_t> s) : shape(std::move(s)) {
  size_t n = 1;
  for (size_t d : shape) n *= d;
  data.assign(n, 0.0);
}

void Tensor::Fill(double v) { std::fill(data.begin(), data.end(), v); }

std::string Tensor::ShapeString() const {
  std::string out = "(";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(shape[i]);
  }
  out += ")";
  return out;
}

Tensor FromFeatureTensor(const FeatureTensor& features) {
  Tensor t({features.channels, features.frames, features.bands});
  for (size_t i = 0; i < features.data.size(); ++i) {
    t.data[i] = static_cast<double>(features.data[i]);
  }
  return t;
}

}  // namespace bsk
