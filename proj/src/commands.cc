// src/commands.cc

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

#include "bsk/commands.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>

#include "bsk/checkpoint.h"
#include "bsk/error.h"
#include "bsk/feature_io.h"
#include "bsk/io_util.h"
#include "bsk/metrics.h"
#include "bsk/rng.h"
#include "bsk/synth.h"
#include "bsk/targets.h"
#include "bsk/wav.h"
#include "json.hpp"

namespace bsk {

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Logging, controlled by BSK_LOG = quiet | info | debug (default info).

int LogLevel() {
  static const int level = [] {
    const char* env = std::getenv("BSK_LOG");
    if (env == nullptr) return 1;
    if (std::strcmp(env, "quiet") == 0) return 0;
    if (std::strcmp(env, "debug") == 0) return 2;
    return 1;
  }();
  return level;
}

void LogInfo(const std::string& message) {
  if (LogLevel() >= 1) std::fprintf(stderr, "[bsk] %s\n", message.c_str());
}

void LogDebug(const std::string& message) {
  if (LogLevel() >= 2) std::fprintf(stderr, "[bsk:debug] %s\n", message.c_str());
}

// ---------------------------------------------------------------------------
// Sidecar index: maps clip windows back to recordings, carries the frame
// grid, the vocabulary, and the lag map when the layout has one.

struct IndexRecording {
  std::string audio;
  std::string annotation;
  std::string scene;
  uint32_t frames = 0;
};

struct IndexClip {
  std::string file;
  int recording = 0;
  int window = 0;
  uint32_t start_frame = 0;
  int valid_frames = 0;
};

struct FeatureIndex {
  std::string manifest;
  std::string feature_set;
  int sample_rate = 0;
  StftConfig stft;
  int mel_bands = 0;
  int model_frames = 0;
  std::vector<std::string> event_classes;
  std::vector<std::string> scene_classes;
  std::vector<int> gcc_lags;
  std::vector<IndexRecording> recordings;
  std::vector<IndexClip> clips;
};

std::string IndexPath(const std::string& feature_dir) {
  return (fs::path(feature_dir) / "index.json").string();
}

std::string IndexToJson(const FeatureIndex& index) {
  nlohmann::json doc;
  doc["manifest"] = index.manifest;
  doc["feature_set"] = index.feature_set;
  doc["sample_rate"] = index.sample_rate;
  doc["stft"] = {{"window", index.stft.window_length},
                 {"hop", index.stft.hop_length},
                 {"fft", index.stft.fft_size}};
  doc["mel_bands"] = index.mel_bands;
  doc["model_frames"] = index.model_frames;
  doc["event_classes"] = index.event_classes;
  doc["scene_classes"] = index.scene_classes;
  if (!index.gcc_lags.empty()) doc["gcc_lags"] = index.gcc_lags;
  auto& recs = doc["recordings"] = nlohmann::json::array();
  for (const auto& r : index.recordings) {
    recs.push_back({{"audio", r.audio},
                    {"annotation", r.annotation},
                    {"scene", r.scene},
                    {"frames", r.frames}});
  }
  auto& clips = doc["clips"] = nlohmann::json::array();
  for (const auto& c : index.clips) {
    clips.push_back({{"file", c.file},
                     {"recording", c.recording},
                     {"window", c.window},
                     {"start_frame", c.start_frame},
                     {"valid_frames", c.valid_frames}});
  }
  return doc.dump(2) + "\n";
}

FeatureIndex IndexFromJsonFile(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFileText(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": invalid index JSON: " + e.what());
  }
  FeatureIndex index;
  try {
    index.manifest = doc.at("manifest");
    index.feature_set = doc.at("feature_set");
    index.sample_rate = doc.at("sample_rate");
    index.stft.window_length = doc.at("stft").at("window");
    index.stft.hop_length = doc.at("stft").at("hop");
    index.stft.fft_size = doc.at("stft").at("fft");
    index.mel_bands = doc.at("mel_bands");
    index.model_frames = doc.at("model_frames");
    index.event_classes = doc.at("event_classes").get<std::vector<std::string>>();
    index.scene_classes = doc.at("scene_classes").get<std::vector<std::string>>();
    if (doc.contains("gcc_lags")) {
      index.gcc_lags = doc.at("gcc_lags").get<std::vector<int>>();
    }
    for (const auto& r : doc.at("recordings")) {
      index.recordings.push_back({r.at("audio"), r.at("annotation"), r.at("scene"),
                                  r.at("frames")});
    }
    for (const auto& c : doc.at("clips")) {
      index.clips.push_back({c.at("file"), c.at("recording"), c.at("window"),
                             c.at("start_frame"), c.at("valid_frames")});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": index field error: " + e.what());
  }
  return index;
}

LabelVocabulary IndexVocabulary(const FeatureIndex& index) {
  LabelVocabulary vocab;
  vocab.event_classes = index.event_classes;
  vocab.scene_classes = index.scene_classes;
  return vocab;
}

void PrintItemErrors(const std::vector<ItemError>& errors) {
  if (errors.empty()) return;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& e : errors) {
    list.push_back({{"path", e.path}, {"error", e.message}});
  }
  std::fprintf(stderr, "%s\n", list.dump(2).c_str());
}

// Loads one window's targets from the full-recording grid.
TargetSet WindowTargets(const BinaryMatrix& full_sed, const std::vector<uint8_t>& scene,
                        uint32_t start_frame, int valid_frames, int window_frames) {
  TargetSet targets;
  targets.sed = BinaryMatrix(window_frames, full_sed.cols);
  for (int t = 0; t < valid_frames; ++t) {
    for (size_t c = 0; c < full_sed.cols; ++c) {
      targets.sed.at(t, c) = full_sed.at(start_frame + t, c);
    }
  }
  targets.scene = scene;
  return targets;
}

struct LoadedDataset {
  std::vector<TrainClip> clips;
  std::vector<int> scene_refs;  // per clip
};

// Reads every window's features and rebuilds its targets from annotations.
LoadedDataset LoadDataset(const RunConfig& config, const FeatureIndex& index,
                          const std::string& feature_dir) {
  const LabelVocabulary vocab = IndexVocabulary(index);
  const double hop_seconds =
      static_cast<double>(index.stft.hop_length) / index.sample_rate;

  // Full-recording target grids, built once per recording.
  std::vector<BinaryMatrix> full_targets(index.recordings.size());
  std::vector<int> scene_index(index.recordings.size());
  for (size_t r = 0; r < index.recordings.size(); ++r) {
    const auto& rec = index.recordings[r];
    const auto events =
        ParseAnnotationFile(ResolveManifestPath(index.manifest, rec.annotation));
    full_targets[r] = EncodeSedTargets(events, hop_seconds, rec.frames, vocab);
    scene_index[r] = vocab.SceneIndex(rec.scene);
  }

  LoadedDataset data;
  for (const auto& clip : index.clips) {
    const auto features =
        ReadFeatureFile((fs::path(feature_dir) / clip.file).string());
    if (features.frames != static_cast<uint32_t>(config.model.frames) ||
        features.bands != static_cast<uint32_t>(config.model.mel_bands)) {
      throw ConfigError("feature file " + clip.file +
                        " does not match the configured model grid");
    }
    const int rec = clip.recording;
    TrainClip out;
    out.features = FromFeatureTensor(features);
    out.sed = WindowTargets(full_targets[rec],
                            SceneOneHot(scene_index[rec],
                                        static_cast<int>(vocab.scene_classes.size())),
                            clip.start_frame, clip.valid_frames, config.model.frames)
                  .sed;
    out.scene_index = scene_index[rec];
    out.valid_frames = clip.valid_frames;
    data.clips.push_back(std::move(out));
    data.scene_refs.push_back(scene_index[rec]);
  }
  return data;
}

void CheckIndexMatchesConfig(const FeatureIndex& index, const RunConfig& config) {
  if (index.feature_set != FeatureSetName(config.feature_set)) {
    throw ConfigError("feature layout mismatch: features were extracted as '" +
                      index.feature_set + "' but the run asks for '" +
                      FeatureSetName(config.feature_set) + "'");
  }
  if (index.model_frames != config.model.frames) {
    throw ConfigError("window length mismatch: features use T=" +
                      std::to_string(index.model_frames) + ", model expects T=" +
                      std::to_string(config.model.frames));
  }
  if (index.mel_bands != config.model.mel_bands) {
    throw ConfigError("band count mismatch: features use M=" +
                      std::to_string(index.mel_bands) + ", model expects M=" +
                      std::to_string(config.model.mel_bands));
  }
  if (static_cast<int>(index.event_classes.size()) != config.model.sed_classes) {
    throw ConfigError("vocabulary has " + std::to_string(index.event_classes.size()) +
                      " event classes but the model expects " +
                      std::to_string(config.model.sed_classes));
  }
  if (static_cast<int>(index.scene_classes.size()) != config.model.asc_classes) {
    throw ConfigError("vocabulary has " + std::to_string(index.scene_classes.size()) +
                      " scene classes but the model expects " +
                      std::to_string(config.model.asc_classes));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// extract

int CmdExtract(const RunConfig& config, std::vector<ItemError>* errors_out) {
  config.Validate();
  if (config.paths.manifest.empty() || config.paths.feature_dir.empty()) {
    throw ConfigError("extract needs paths.manifest and paths.feature_dir");
  }
  const auto entries = ParseManifestFile(config.paths.manifest);
  if (entries.empty()) throw InputError("manifest lists no recordings");
  fs::create_directories(config.paths.feature_dir);

  std::vector<ItemError> errors;

  // Sequential vocabulary pass over every annotation file.
  std::vector<ClipMeta> metas(entries.size());
  std::vector<bool> usable(entries.size(), true);
  for (size_t i = 0; i < entries.size(); ++i) {
    metas[i].audio_path =
        ResolveManifestPath(config.paths.manifest, entries[i].audio_path);
    metas[i].scene_label = entries[i].scene_label;
    try {
      metas[i].events = ParseAnnotationFile(
          ResolveManifestPath(config.paths.manifest, entries[i].annotation_path));
    } catch (const std::exception& e) {
      errors.push_back({entries[i].annotation_path, e.what()});
      usable[i] = false;
    }
  }
  std::vector<ClipMeta> usable_metas;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (usable[i]) usable_metas.push_back(metas[i]);
  }
  const LabelVocabulary vocab = LabelVocabulary::Build(usable_metas);

  FeatureIndex index;
  index.manifest = config.paths.manifest;
  index.feature_set = FeatureSetName(config.feature_set);
  index.mel_bands = config.model.mel_bands;
  index.model_frames = config.model.frames;
  index.event_classes = vocab.event_classes;
  index.scene_classes = vocab.scene_classes;

  int clip_counter = 0;
  for (size_t i = 0; i < entries.size(); ++i) {
    if (!usable[i]) continue;
    try {
      const AudioClip audio = ReadWav(metas[i].audio_path);
      if (index.sample_rate == 0) {
        index.sample_rate = audio.sample_rate;
        index.stft = StftConfig::ForSampleRate(audio.sample_rate);
      } else if (audio.sample_rate != index.sample_rate) {
        throw InputError("sample rate " + std::to_string(audio.sample_rate) +
                         " differs from the dataset rate " +
                         std::to_string(index.sample_rate) +
                         " (resampling is unsupported)");
      }

      FeatureConfig fc;
      fc.stft = index.stft;
      fc.mel_bands = config.model.mel_bands;
      GccLagMap lags;
      const FeatureTensor features =
          StackFeatures(config.feature_set, audio, fc,
                        config.feature_set == FeatureSet::kMelGcc ? &lags : nullptr);
      if (config.feature_set == FeatureSet::kMelGcc && index.gcc_lags.empty()) {
        index.gcc_lags = lags.lag_values;
      }

      const double hop_seconds =
          static_cast<double>(index.stft.hop_length) / index.sample_rate;
      TargetSet targets;
      targets.sed = EncodeSedTargets(metas[i].events, hop_seconds, features.frames,
                                     vocab);
      targets.scene = EncodeSceneTarget(metas[i].scene_label, vocab);
      const auto windows = SplitIntoClips(features, targets, config.model.frames);

      index.recordings.push_back({entries[i].audio_path, entries[i].annotation_path,
                                  entries[i].scene_label, features.frames});
      const int rec_id = static_cast<int>(index.recordings.size()) - 1;
      for (size_t w = 0; w < windows.size(); ++w) {
        char name[32];
        std::snprintf(name, sizeof name, "clip_%05d.bft", clip_counter++);
        WriteFeatureFile((fs::path(config.paths.feature_dir) / name).string(),
                         windows[w].features);
        index.clips.push_back({name, rec_id, static_cast<int>(w),
                               static_cast<uint32_t>(w * config.model.frames),
                               windows[w].valid_frames});
      }
      LogDebug("extracted " + metas[i].audio_path + " -> " +
               std::to_string(windows.size()) + " windows");
    } catch (const std::exception& e) {
      errors.push_back({metas[i].audio_path, e.what()});
    }
  }

  if (index.recordings.empty()) {
    PrintItemErrors(errors);
    if (errors_out != nullptr) *errors_out = errors;
    throw InputError("extraction produced no usable recordings");
  }

  WriteFileText(IndexPath(config.paths.feature_dir), IndexToJson(index));
  LogInfo("extract: " + std::to_string(index.recordings.size()) + " recordings -> " +
          std::to_string(index.clips.size()) + " windows in " +
          config.paths.feature_dir);

  PrintItemErrors(errors);
  if (errors_out != nullptr) *errors_out = errors;
  return errors.empty() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// train

int CmdTrain(const RunConfig& config) {
  config.Validate();
  if (config.paths.feature_dir.empty() || config.paths.checkpoint.empty()) {
    throw ConfigError("train needs paths.feature_dir and paths.checkpoint");
  }
  const FeatureIndex index = IndexFromJsonFile(IndexPath(config.paths.feature_dir));
  CheckIndexMatchesConfig(index, config);

  const LoadedDataset data = LoadDataset(config, index, config.paths.feature_dir);
  const int channels = FeatureSetChannels(config.feature_set);

  MtlNetwork net(config.model, config.mode, channels);
  Rng init_rng(config.seed);
  net.InitParams(&init_rng);

  TrainOptions options;
  options.epochs = config.epochs;
  options.seed = config.seed;
  options.optimizer = config.optimizer;
  if (config.mode == TaskMode::kAscOnly) {
    // A lone classification head trains at unit weight.
    options.asc_loss_weight_override = 1.0;
  }
  LogInfo("train: " + std::to_string(data.clips.size()) + " windows, " +
          std::to_string(config.epochs) + " epochs, mode " +
          TaskModeName(config.mode));
  const auto log = Train(&net, data.clips, options);

  if (const auto parent = fs::path(config.paths.checkpoint).parent_path();
      !parent.empty()) {
    fs::create_directories(parent);
  }
  SaveCheckpoint(config.paths.checkpoint, net, config.feature_set);

  nlohmann::json log_doc;
  log_doc["seed"] = config.seed;
  log_doc["epochs"] = static_cast<int>(log.size());
  log_doc["mode"] = TaskModeName(config.mode);
  log_doc["feature_set"] = FeatureSetName(config.feature_set);
  auto& entries = log_doc["entries"] = nlohmann::json::array();
  for (size_t e = 0; e < log.size(); ++e) {
    entries.push_back({{"epoch", e},
                       {"sed_loss", log[e].sed_loss},
                       {"asc_loss", log[e].asc_loss},
                       {"total", log[e].total}});
  }
  const std::string log_path = config.paths.train_log.empty()
                                   ? config.paths.checkpoint + ".log.json"
                                   : config.paths.train_log;
  WriteFileText(log_path, log_doc.dump(2) + "\n");
  LogInfo("train: wrote " + config.paths.checkpoint);
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

int CmdEvaluate(const RunConfig& config) {
  if (config.paths.feature_dir.empty() || config.paths.checkpoint.empty() ||
      config.paths.report.empty()) {
    throw ConfigError("evaluate needs paths.feature_dir, paths.checkpoint, paths.report");
  }
  LoadedCheckpoint loaded = LoadCheckpoint(config.paths.checkpoint);
  MtlNetwork& net = *loaded.network;

  const FeatureIndex index = IndexFromJsonFile(IndexPath(config.paths.feature_dir));
  if (index.feature_set != FeatureSetName(loaded.layout)) {
    throw ConfigError("checkpoint was trained on '" +
                      std::string(FeatureSetName(loaded.layout)) +
                      "' features but the directory holds '" + index.feature_set + "'");
  }
  if (config.mode != net.mode()) {
    throw ConfigError(std::string("run mode ") + TaskModeName(config.mode) +
                      " does not match the checkpoint mode " +
                      TaskModeName(net.mode()));
  }
  RunConfig effective = config;
  effective.feature_set = loaded.layout;
  effective.model = net.config();
  CheckIndexMatchesConfig(index, effective);

  const LoadedDataset data = LoadDataset(effective, index, config.paths.feature_dir);
  const double hop_seconds =
      static_cast<double>(index.stft.hop_length) / index.sample_rate;
  const bool want_sed = net.mode() != TaskMode::kAscOnly;
  const bool want_asc = net.mode() != TaskMode::kSedOnly;

  SegmentScores sed_scores;
  std::vector<int> scene_ref, scene_pred;
  for (size_t i = 0; i < data.clips.size(); ++i) {
    const TrainClip& clip = data.clips[i];
    const Prediction pred = Predict(&net, clip.features, config.sed_threshold);
    if (want_sed) {
      // Only the real frames of the window are scored.
      BinaryMatrix ref(clip.valid_frames, clip.sed.cols);
      BinaryMatrix hyp(clip.valid_frames, clip.sed.cols);
      for (int t = 0; t < clip.valid_frames; ++t) {
        for (size_t c = 0; c < clip.sed.cols; ++c) {
          ref.at(t, c) = clip.sed.at(t, c);
          hyp.at(t, c) = pred.sed.at(t, c);
        }
      }
      sed_scores.Merge(SedScores(
          Segmentize(ref, hop_seconds, config.granularity_seconds),
          Segmentize(hyp, hop_seconds, config.granularity_seconds)));
    }
    if (want_asc) {
      scene_ref.push_back(clip.scene_index);
      scene_pred.push_back(pred.scene_index);
    }
  }

  double asc_f1 = 0.0;
  if (want_asc) {
    asc_f1 = config.asc_macro_f1
                 ? AscF1Macro(scene_ref, scene_pred, net.config().asc_classes)
                 : AscF1Micro(scene_ref, scene_pred, net.config().asc_classes);
  }
  const std::string report = MetricsReportJson(
      TaskModeName(net.mode()), want_sed ? &sed_scores : nullptr,
      config.granularity_seconds, want_asc ? &asc_f1 : nullptr);

  if (const auto parent = fs::path(config.paths.report).parent_path();
      !parent.empty()) {
    fs::create_directories(parent);
  }
  WriteFileText(config.paths.report, report);
  LogInfo("evaluate: wrote " + config.paths.report);
  return 0;
}

// ---------------------------------------------------------------------------
// synth

int CmdSynth(const std::string& spec_path, const std::string& out_dir, uint64_t seed) {
  if (out_dir.empty()) throw ConfigError("synth needs an output directory");

  if (spec_path.empty()) {
    const MicroCorpus corpus = MakeMicroCorpus(out_dir, seed);
    LogInfo("synth: micro-corpus with " + std::to_string(corpus.wav_paths.size()) +
            " clips in " + out_dir);
    return 0;
  }

  const std::string text = ReadFileText(spec_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(spec_path + ": invalid JSON: " + e.what());
  }
  if (doc.contains("micro_corpus") && doc.at("micro_corpus").get<bool>()) {
    const uint64_t corpus_seed =
        doc.contains("seed") ? doc.at("seed").get<uint64_t>() : seed;
    MakeMicroCorpus(out_dir, corpus_seed);
    LogInfo("synth: micro-corpus in " + out_dir);
    return 0;
  }

  SynthSpec spec = SynthSpecFromJson(text);
  const auto [clip, meta] = Render(spec);
  fs::create_directories(out_dir);
  WriteWav16((fs::path(out_dir) / "clip_00.wav").string(), clip);
  WriteFileText((fs::path(out_dir) / "clip_00.ann").string(),
                SerializeAnnotations(meta.events));
  std::vector<ManifestEntry> manifest = {
      {"clip_00.wav", spec.scene_label, "clip_00.ann"}};
  WriteFileText((fs::path(out_dir) / "manifest.tsv").string(),
                SerializeManifest(manifest));
  LogInfo("synth: rendered 1 clip in " + out_dir);
  return 0;
}

}  // namespace bsk
