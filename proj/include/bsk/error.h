// include/bsk/error.h

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

#ifndef BSK_ERROR_H_
#define BSK_ERROR_H_

#include <stdexcept>
#include <string>

namespace bsk {

// Invalid fixed configuration: window lengths, filter counts, layer sizes.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension mismatch between a producer and a consumer.
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file content: WAV, annotation text, manifests, JSON configs.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates an operation's contract.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem-level failure (missing file, failed write).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bsk

#endif  // BSK_ERROR_H_
