// include/bsk/feature_io.h

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

#ifndef BSK_FEATURE_IO_H_
#define BSK_FEATURE_IO_H_

#include <string>

#include "bsk/features.h"

namespace bsk {

// Feature file format, one clip window per file:
//   magic "BFT1", u32 CH, u32 T, u32 M, u8 layout_tag,
//   then CH*T*M little-endian 32-bit floats, C-order, CH outermost.
void WriteFeatureFile(const std::string& path, const FeatureTensor& tensor);
FeatureTensor ReadFeatureFile(const std::string& path);

}  // namespace bsk

#endif  // BSK_FEATURE_IO_H_
