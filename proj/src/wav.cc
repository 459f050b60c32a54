// src/wav.cc

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

#include "bsk/wav.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

#include "bsk/error.h"
#include "bsk/io_util.h"

namespace bsk {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatIeeeFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xfffe;

struct FmtChunk {
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits_per_sample = 0;
};

std::string ChunkId(std::istream& is) {
  char id[4];
  is.read(id, 4);
  if (is.gcount() != 4) return "";
  return std::string(id, 4);
}

FmtChunk ParseFmt(std::istream& is, uint32_t chunk_size) {
  if (chunk_size < 16) throw ParseError("malformed header: fmt chunk too small");
  FmtChunk fmt;
  fmt.format = ReadU16(is, "fmt format tag");
  fmt.channels = ReadU16(is, "fmt channel count");
  fmt.sample_rate = ReadU32(is, "fmt sample rate");
  ReadU32(is, "fmt byte rate");
  ReadU16(is, "fmt block align");
  fmt.bits_per_sample = ReadU16(is, "fmt bits per sample");

  uint32_t consumed = 16;
  if (fmt.format == kFormatExtensible) {
    if (chunk_size < 40) {
      throw ParseError("malformed header: extensible fmt chunk too small");
    }
    ReadU16(is, "fmt extension size");
    ReadU16(is, "fmt valid bits");
    ReadU32(is, "fmt channel mask");
    // The first two GUID bytes carry the actual format code.
    fmt.format = ReadU16(is, "fmt subformat");
    char guid_rest[14];
    ReadBytes(is, guid_rest, 14, "fmt subformat guid");
    consumed = 40;
  }
  if (chunk_size > consumed) {
    is.seekg(chunk_size - consumed, std::ios::cur);
  }
  return fmt;
}

}  // namespace

AudioClip ReadWav(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open WAV file: " + path);

  if (ChunkId(is) != "RIFF") {
    throw ParseError("malformed header: missing RIFF tag in " + path);
  }
  ReadU32(is, "RIFF size");
  if (ChunkId(is) != "WAVE") {
    throw ParseError("malformed header: missing WAVE tag in " + path);
  }

  FmtChunk fmt;
  bool have_fmt = false;
  std::vector<uint8_t> payload;

  while (true) {
    const std::string id = ChunkId(is);
    if (id.empty()) break;
    const uint32_t size = ReadU32(is, "chunk size");
    if (id == "fmt ") {
      fmt = ParseFmt(is, size);
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) {
        throw ParseError("malformed header: data chunk precedes fmt in " + path);
      }
      payload.resize(size);
      is.read(reinterpret_cast<char*>(payload.data()), size);
      if (static_cast<uint32_t>(is.gcount()) != size) {
        throw ParseError("truncated data: data chunk shorter than declared in " + path);
      }
      break;
    } else {
      // Skip unknown chunks; RIFF pads odd sizes with one byte.
      is.seekg(size + (size & 1), std::ios::cur);
    }
  }

  if (!have_fmt) throw ParseError("malformed header: no fmt chunk in " + path);
  if (payload.empty()) throw ParseError("malformed header: no data chunk in " + path);

  if (fmt.channels < 1 || fmt.channels > 2) {
    throw ParseError("unsupported codec: " + std::to_string(fmt.channels) +
                     " channels in " + path);
  }
  if (fmt.sample_rate == 0) {
    throw ParseError("malformed header: zero sample rate in " + path);
  }

  int bytes_per_sample = 0;
  if (fmt.format == kFormatPcm && fmt.bits_per_sample == 16) {
    bytes_per_sample = 2;
  } else if (fmt.format == kFormatPcm && fmt.bits_per_sample == 24) {
    bytes_per_sample = 3;
  } else if (fmt.format == kFormatIeeeFloat && fmt.bits_per_sample == 32) {
    bytes_per_sample = 4;
  } else {
    throw ParseError("unsupported codec: format " + std::to_string(fmt.format) +
                     " at " + std::to_string(fmt.bits_per_sample) + " bits in " + path);
  }

  const size_t frame_bytes = static_cast<size_t>(bytes_per_sample) * fmt.channels;
  if (payload.size() % frame_bytes != 0) {
    throw ParseError("truncated data: partial sample frame in " + path);
  }
  const size_t num_frames = payload.size() / frame_bytes;

  std::vector<std::vector<double>> channels(
      fmt.channels, std::vector<double>(num_frames, 0.0));
  const uint8_t* p = payload.data();
  for (size_t t = 0; t < num_frames; ++t) {
    for (int c = 0; c < fmt.channels; ++c) {
      double v = 0.0;
      if (bytes_per_sample == 2) {
        const int16_t s = static_cast<int16_t>(p[0] | (p[1] << 8));
        v = static_cast<double>(s) / 32768.0;
      } else if (bytes_per_sample == 3) {
        int32_t s = p[0] | (p[1] << 8) | (p[2] << 16);
        if (s & 0x800000) s |= ~0xffffff;  // sign-extend
        v = static_cast<double>(s) / 8388608.0;
      } else {
        float f;
        std::memcpy(&f, p, 4);
        v = static_cast<double>(f);
      }
      channels[c][t] = v;
      p += bytes_per_sample;
    }
  }
  return AudioClip(std::move(channels), static_cast<int>(fmt.sample_rate));
}

void WriteWav16(const std::string& path, const AudioClip& clip) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open WAV file for writing: " + path);

  const uint16_t channels = static_cast<uint16_t>(clip.channel_count());
  const uint32_t sample_rate = static_cast<uint32_t>(clip.sample_rate);
  const uint32_t data_bytes =
      static_cast<uint32_t>(clip.length() * channels * 2);

  WriteBytes(os, "RIFF", 4);
  WriteU32(os, 36 + data_bytes);
  WriteBytes(os, "WAVE", 4);
  WriteBytes(os, "fmt ", 4);
  WriteU32(os, 16);
  WriteU16(os, 1);  // PCM
  WriteU16(os, channels);
  WriteU32(os, sample_rate);
  WriteU32(os, sample_rate * channels * 2);
  WriteU16(os, static_cast<uint16_t>(channels * 2));
  WriteU16(os, 16);
  WriteBytes(os, "data", 4);
  WriteU32(os, data_bytes);

  for (size_t t = 0; t < clip.length(); ++t) {
    for (int c = 0; c < channels; ++c) {
      double v = clip.channels[c][t];
      if (v > 1.0) v = 1.0;
      if (v < -1.0) v = -1.0;
      const int32_t q = static_cast<int32_t>(std::lround(v * 32767.0));
      WriteU16(os, static_cast<uint16_t>(static_cast<int16_t>(q)));
    }
  }
  if (!os) throw IoError("failed writing WAV file: " + path);
}

}  // namespace bsk
