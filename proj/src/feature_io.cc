// src/feature_io.cc

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

#include "bsk/feature_io.h"

#include <fstream>

#include "bsk/error.h"
#include "bsk/io_util.h"

namespace bsk {

namespace {
constexpr char kMagic[4] = {'B', 'F', 'T', '1'};
}

void WriteFeatureFile(const std::string& path, const FeatureTensor& tensor) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open feature file for writing: " + path);
  WriteBytes(os, kMagic, 4);
  WriteU32(os, tensor.channels);
  WriteU32(os, tensor.frames);
  WriteU32(os, tensor.bands);
  WriteU8(os, static_cast<uint8_t>(tensor.layout));
  for (float v : tensor.data) WriteF32(os, v);
  if (!os) throw IoError("failed writing feature file: " + path);
}

FeatureTensor ReadFeatureFile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open feature file: " + path);
  char magic[4];
  ReadBytes(is, magic, 4, "feature file magic");
  if (std::string(magic, 4) != std::string(kMagic, 4)) {
    throw ParseError("malformed header: not a BFT1 feature file: " + path);
  }
  FeatureTensor tensor;
  tensor.channels = ReadU32(is, "feature channels");
  tensor.frames = ReadU32(is, "feature frames");
  tensor.bands = ReadU32(is, "feature bands");
  const uint8_t tag = ReadU8(is, "feature layout tag");
  if (tag > 6) throw ParseError("malformed header: unknown feature layout tag");
  tensor.layout = static_cast<FeatureSet>(tag);
  tensor.data.resize(tensor.size());
  for (auto& v : tensor.data) v = ReadF32(is, "feature data");
  return tensor;
}

}  // namespace bsk
