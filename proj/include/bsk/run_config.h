// include/bsk/run_config.h

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

#ifndef BSK_RUN_CONFIG_H_
#define BSK_RUN_CONFIG_H_

#include <cstdint>
#include <string>

#include "bsk/features.h"
#include "bsk/network.h"
#include "bsk/train.h"

namespace bsk {

// One experiment: which features, which task heads, where the data lives.
// JSON fields mirror the struct; command-line flags override file values.
struct RunConfig {
  FeatureSet feature_set = FeatureSet::kMel1ch;
  TaskMode mode = TaskMode::kMtl;
  ModelConfig model;
  uint64_t seed = 0;
  int epochs = 100;
  double sed_threshold = 0.5;
  double granularity_seconds = 1.0;
  bool asc_macro_f1 = false;
  OptimizerConfig optimizer;

  struct Paths {
    std::string manifest;
    std::string feature_dir;
    std::string checkpoint;
    std::string report;
    std::string train_log;
  } paths;

  void Validate() const;

  static RunConfig FromJson(const std::string& json_text);
  static RunConfig FromJsonFile(const std::string& path);
  std::string ToJson() const;
};

}  // namespace bsk

#endif  // BSK_RUN_CONFIG_H_
