// include/bsk/commands.h

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

#ifndef BSK_COMMANDS_H_
#define BSK_COMMANDS_H_

#include <string>
#include <vector>

#include "bsk/run_config.h"

namespace bsk {

// Batch pipeline drivers behind the command-line tool. Fatal configuration
// problems throw; per-recording extraction failures are collected so one bad
// file does not sink the batch. Exit code 0 means no item failed.

struct ItemError {
  std::string path;
  std::string message;
};

// Extracts one feature file per clip window plus the sidecar index.json
// into paths.feature_dir.
int CmdExtract(const RunConfig& config, std::vector<ItemError>* errors = nullptr);

// Trains per the config and writes the checkpoint plus a JSON training log.
int CmdTrain(const RunConfig& config);

// Runs prediction over the extracted windows and writes the metrics report.
int CmdEvaluate(const RunConfig& config);

// Renders a synthetic corpus. An empty spec path (or a spec containing
// "micro_corpus": true) produces the fixed 8-clip micro-corpus.
int CmdSynth(const std::string& spec_path, const std::string& out_dir, uint64_t seed);

}  // namespace bsk

#endif  // BSK_COMMANDS_H_
