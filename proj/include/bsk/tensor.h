// include/bsk/tensor.h

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

#ifndef BSK_TENSOR_H_
#define BSK_TENSOR_H_

#include <cstddef>
#include <string>
#include <vector>

#include "bsk/features.h"

namespace bsk {

// Dense row-major tensor of 64-bit reals. Training math runs in doubles;
// feature I/O converts from the 32-bit on-disk representation.
struct Tensor {
  std::vector<size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<size_t> s);

  size_t numel() const { return data.size(); }
  size_t dim(size_t i) const { return shape[i]; }
  size_t ndim() const { return shape.size(); }

  // 3-D accessors (channels x rows x cols).
  double& at3(size_t c, size_t r, size_t col) {
    return data[(c * shape[1] + r) * shape[2] + col];
  }
  double at3(size_t c, size_t r, size_t col) const {
    return data[(c * shape[1] + r) * shape[2] + col];
  }
  // 2-D accessors (rows x cols).
  double& at2(size_t r, size_t c) { return data[r * shape[1] + c]; }
  double at2(size_t r, size_t c) const { return data[r * shape[1] + c]; }

  void Fill(double v);
  bool SameShape(const Tensor& other) const { return shape == other.shape; }
  std::string ShapeString() const;
};

// Upcast of a stored feature tensor into the CH x T x M training layout.
Tensor FromFeatureTensor(const FeatureTensor& features);

}  // namespace bsk

#endif  // BSK_TENSOR_H_
