// tools/bsk_main.cc

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

// Batch driver for the binaural scene analysis pipeline:
//   bsk synth    --out corpus --seed 7
//   bsk extract  --config run.json [--feature-set mel_gcc] [--out features]
//   bsk train    --config run.json [--mode MTL] [--seed 7] [--out model.bmk]
//   bsk evaluate --config run.json [--granularity 1.0] [--threshold 0.5]
// Progress goes to stderr (BSK_LOG=quiet|info|debug); reports are JSON files.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "bsk/commands.h"
#include "bsk/run_config.h"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string feature_set;
  std::string mode;
  std::string out;
  uint64_t seed = 0;
  bool seed_set = false;
  double granularity = 0.0;
  bool granularity_set = false;
  double threshold = -1.0;
  bool threshold_set = false;
};

void AddCommonFlags(CLI::App* cmd, CommonFlags* flags, bool config_required) {
  auto* config_opt =
      cmd->add_option("--config", flags->config_path, "Run configuration JSON");
  if (config_required) config_opt->required();
  cmd->add_option("--feature-set", flags->feature_set,
                  "Override: mel1ch|mel2ch|mel_phase|mel_ipd|mel_sincos|mel_gcc|mel_ild");
  cmd->add_option("--mode", flags->mode, "Override: SED|ASC|MTL");
  cmd->add_option("--out", flags->out, "Override the command's output path");
  cmd->add_option("--seed", flags->seed, "Override the run seed")
      ->each([flags](const std::string&) { flags->seed_set = true; });
  cmd->add_option("--granularity", flags->granularity,
                  "Override the evaluation segment length in seconds")
      ->each([flags](const std::string&) { flags->granularity_set = true; });
  cmd->add_option("--threshold", flags->threshold,
                  "Override the detection probability threshold")
      ->each([flags](const std::string&) { flags->threshold_set = true; });
}

bsk::RunConfig LoadConfig(const CommonFlags& flags) {
  bsk::RunConfig config = bsk::RunConfig::FromJsonFile(flags.config_path);
  if (!flags.feature_set.empty()) {
    config.feature_set = bsk::FeatureSetFromName(flags.feature_set);
  }
  if (!flags.mode.empty()) config.mode = bsk::TaskModeFromName(flags.mode);
  if (flags.seed_set) config.seed = flags.seed;
  if (flags.granularity_set) config.granularity_seconds = flags.granularity;
  if (flags.threshold_set) config.sed_threshold = flags.threshold;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binaural sound event detection and scene classification toolkit"};
  app.require_subcommand(1);

  CommonFlags extract_flags, train_flags, eval_flags;
  std::string synth_spec, synth_out;
  uint64_t synth_seed = 0;

  auto* extract = app.add_subcommand("extract", "Extract feature files from a manifest");
  AddCommonFlags(extract, &extract_flags, true);

  auto* train = app.add_subcommand("train", "Train a model on extracted features");
  AddCommonFlags(train, &train_flags, true);

  auto* evaluate = app.add_subcommand("evaluate", "Score a checkpoint and write metrics");
  AddCommonFlags(evaluate, &eval_flags, true);

  auto* synth = app.add_subcommand("synth", "Render a synthetic corpus");
  synth->add_option("--config", synth_spec, "Scene spec JSON (omit for the micro-corpus)");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--seed", synth_seed, "Corpus seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) {
      bsk::RunConfig config = LoadConfig(extract_flags);
      if (!extract_flags.out.empty()) config.paths.feature_dir = extract_flags.out;
      return bsk::CmdExtract(config);
    }
    if (train->parsed()) {
      bsk::RunConfig config = LoadConfig(train_flags);
      if (!train_flags.out.empty()) config.paths.checkpoint = train_flags.out;
      return bsk::CmdTrain(config);
    }
    if (evaluate->parsed()) {
      bsk::RunConfig config = LoadConfig(eval_flags);
      if (!eval_flags.out.empty()) config.paths.report = eval_flags.out;
      return bsk::CmdEvaluate(config);
    }
    if (synth->parsed()) {
      return bsk::CmdSynth(synth_spec, synth_out, synth_seed);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
