// src/checkpoint.cc

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

#include "bsk/checkpoint.h"

#include <fstream>

#include "bsk/error.h"
#include "bsk/io_util.h"

namespace bsk {

namespace {

constexpr char kMagic[4] = {'B', 'M', 'K', '1'};

void WriteTensor(std::ostream& os, const Tensor& t) {
  WriteU32(os, static_cast<uint32_t>(t.ndim()));
  for (size_t d : t.shape) WriteU32(os, static_cast<uint32_t>(d));
  for (double v : t.data) WriteF64(os, v);
}

void ReadTensorInto(std::istream& is, Tensor* t, const std::string& name) {
  const uint32_t ndim = ReadU32(is, "tensor rank");
  std::vector<size_t> shape(ndim);
  for (auto& d : shape) d = ReadU32(is, "tensor dim");
  if (shape != t->shape) {
    throw ParseError("checkpoint tensor " + name + " has unexpected shape");
  }
  for (auto& v : t->data) v = ReadF64(is, "tensor data");
}

}  // namespace

void SaveCheckpoint(const std::string& path, MtlNetwork& net, FeatureSet layout) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open checkpoint for writing: " + path);

  const ModelConfig& c = net.config();
  WriteBytes(os, kMagic, 4);
  WriteU8(os, static_cast<uint8_t>(net.mode()));
  WriteU8(os, static_cast<uint8_t>(layout));
  WriteU32(os, static_cast<uint32_t>(net.input_channels()));
  WriteU32(os, static_cast<uint32_t>(c.mel_bands));
  WriteU32(os, static_cast<uint32_t>(c.frames));
  WriteU32(os, static_cast<uint32_t>(c.kernel_h));
  WriteU32(os, static_cast<uint32_t>(c.kernel_w));
  WriteU32(os, static_cast<uint32_t>(c.shared_filters));
  WriteU32(os, static_cast<uint32_t>(c.asc_filters));
  for (int f : c.pooling) WriteU32(os, static_cast<uint32_t>(f));
  WriteU32(os, static_cast<uint32_t>(c.gru_features));
  WriteU32(os, static_cast<uint32_t>(c.sed_dense));
  WriteU32(os, static_cast<uint32_t>(c.asc_dense1));
  WriteU32(os, static_cast<uint32_t>(c.asc_dense2));
  WriteU32(os, static_cast<uint32_t>(c.sed_classes));
  WriteU32(os, static_cast<uint32_t>(c.asc_classes));
  WriteF64(os, c.asc_loss_weight);

  const auto params = net.Params();
  const auto states = net.States();
  WriteU32(os, static_cast<uint32_t>(params.size()));
  for (const auto& p : params) WriteTensor(os, *p.value);
  WriteU32(os, static_cast<uint32_t>(states.size()));
  for (const auto& s : states) WriteTensor(os, *s.value);
  if (!os) throw IoError("failed writing checkpoint: " + path);
}

LoadedCheckpoint LoadCheckpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open checkpoint: " + path);

  char magic[4];
  ReadBytes(is, magic, 4, "checkpoint magic");
  if (std::string(magic, 4) != std::string(kMagic, 4)) {
    throw ParseError("malformed header: not a BMK1 checkpoint: " + path);
  }
  const uint8_t mode_byte = ReadU8(is, "mode");
  if (mode_byte > 2) throw ParseError("checkpoint has unknown task mode");
  const uint8_t layout_byte = ReadU8(is, "layout tag");
  if (layout_byte > 6) throw ParseError("checkpoint has unknown feature layout");
  const int input_channels = static_cast<int>(ReadU32(is, "input channels"));

  ModelConfig c;
  c.mel_bands = static_cast<int>(ReadU32(is, "mel bands"));
  c.frames = static_cast<int>(ReadU32(is, "frames"));
  c.kernel_h = static_cast<int>(ReadU32(is, "kernel h"));
  c.kernel_w = static_cast<int>(ReadU32(is, "kernel w"));
  c.shared_filters = static_cast<int>(ReadU32(is, "shared filters"));
  c.asc_filters = static_cast<int>(ReadU32(is, "asc filters"));
  for (auto& f : c.pooling) f = static_cast<int>(ReadU32(is, "pooling"));
  c.gru_features = static_cast<int>(ReadU32(is, "gru features"));
  c.sed_dense = static_cast<int>(ReadU32(is, "sed dense"));
  c.asc_dense1 = static_cast<int>(ReadU32(is, "asc dense1"));
  c.asc_dense2 = static_cast<int>(ReadU32(is, "asc dense2"));
  c.sed_classes = static_cast<int>(ReadU32(is, "sed classes"));
  c.asc_classes = static_cast<int>(ReadU32(is, "asc classes"));
  c.asc_loss_weight = ReadF64(is, "asc loss weight");

  LoadedCheckpoint loaded;
  loaded.layout = static_cast<FeatureSet>(layout_byte);
  loaded.network = std::make_unique<MtlNetwork>(
      c, static_cast<TaskMode>(mode_byte), input_channels);

  const auto params = loaded.network->Params();
  const uint32_t param_count = ReadU32(is, "parameter count");
  if (param_count != params.size()) {
    throw ParseError("checkpoint parameter count mismatch in " + path);
  }
  for (const auto& p : params) ReadTensorInto(is, p.value, p.name);

  const auto states = loaded.network->States();
  const uint32_t state_count = ReadU32(is, "state count");
  if (state_count != states.size()) {
    throw ParseError("checkpoint state count mismatch in " + path);
  }
  for (const auto& s : states) ReadTensorInto(is, s.value, s.name);
  return loaded;
}

}  // namespace bsk
