// src/io_util.cc

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

#include "bsk/io_util.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "bsk/error.h"

namespace bsk {

namespace {

void PutLe(std::ostream& os, uint64_t v, int nbytes) {
  char buf[8];
  for (int i = 0; i < nbytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(buf, nbytes);
}

uint64_t GetLe(std::istream& is, int nbytes, const char* what) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), nbytes);
  if (is.gcount() != nbytes) {
    throw ParseError(std::string("truncated data: short read of ") + what);
  }
  uint64_t v = 0;
  for (int i = 0; i < nbytes; ++i) v |= static_cast<uint64_t>(buf[i]) << (8 * i);
  return v;
}

}  // namespace

void WriteU8(std::ostream& os, uint8_t v) { PutLe(os, v, 1); }
void WriteU16(std::ostream& os, uint16_t v) { PutLe(os, v, 2); }
void WriteU32(std::ostream& os, uint32_t v) { PutLe(os, v, 4); }
void WriteU64(std::ostream& os, uint64_t v) { PutLe(os, v, 8); }

void WriteF32(std::ostream& os, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  WriteU32(os, bits);
}

void WriteF64(std::ostream& os, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  WriteU64(os, bits);
}

void WriteBytes(std::ostream& os, const void* data, size_t n) {
  os.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

uint8_t ReadU8(std::istream& is, const char* what) {
  return static_cast<uint8_t>(GetLe(is, 1, what));
}
uint16_t ReadU16(std::istream& is, const char* what) {
  return static_cast<uint16_t>(GetLe(is, 2, what));
}
uint32_t ReadU32(std::istream& is, const char* what) {
  return static_cast<uint32_t>(GetLe(is, 4, what));
}
uint64_t ReadU64(std::istream& is, const char* what) { return GetLe(is, 8, what); }

float ReadF32(std::istream& is, const char* what) {
  uint32_t bits = ReadU32(is, what);
  float v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

double ReadF64(std::istream& is, const char* what) {
  uint64_t bits = ReadU64(is, what);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

void ReadBytes(std::istream& is, void* data, size_t n, const char* what) {
  is.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(is.gcount()) != n) {
    throw ParseError(std::string("truncated data: short read of ") + what);
  }
}

std::vector<uint8_t> ReadFileBytes(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open file: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                             std::istreambuf_iterator<char>());
  return bytes;
}

std::string ReadFileText(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void WriteFileText(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open file for writing: " + path);
  os << text;
  if (!os) throw IoError("failed writing file: " + path);
}

}  // namespace bsk
