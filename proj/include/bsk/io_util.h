// include/bsk/io_util.h

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

#ifndef BSK_IO_UTIL_H_
#define BSK_IO_UTIL_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bsk {

// Little-endian primitives for the bit-exact on-disk formats.
// Writers emit byte by byte; readers throw ParseError on short reads.

void WriteU8(std::ostream& os, uint8_t v);
void WriteU16(std::ostream& os, uint16_t v);
void WriteU32(std::ostream& os, uint32_t v);
void WriteU64(std::ostream& os, uint64_t v);
void WriteF32(std::ostream& os, float v);
void WriteF64(std::ostream& os, double v);
void WriteBytes(std::ostream& os, const void* data, size_t n);

uint8_t ReadU8(std::istream& is, const char* what);
uint16_t ReadU16(std::istream& is, const char* what);
uint32_t ReadU32(std::istream& is, const char* what);
uint64_t ReadU64(std::istream& is, const char* what);
float ReadF32(std::istream& is, const char* what);
double ReadF64(std::istream& is, const char* what);
void ReadBytes(std::istream& is, void* data, size_t n, const char* what);

// Whole-file helpers.
std::vector<uint8_t> ReadFileBytes(const std::string& path);
std::string ReadFileText(const std::string& path);
void WriteFileText(const std::string& path, const std::string& text);

}  // namespace bsk

#endif  // BSK_IO_UTIL_H_
