// include/bsk/synth.h

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

#ifndef BSK_SYNTH_H_
#define BSK_SYNTH_H_

#include <string>
#include <utility>
#include <vector>

#include "bsk/annotations.h"
#include "bsk/audio.h"

namespace bsk {

enum class SourceKind { kTone, kNoiseBand, kClickTrain };

// One spatialized source. Every source is deterministic in t, so the right
// channel is the same function evaluated itd samples earlier and scaled by
// the level difference; integer sample delays keep correlation-lag ground
// truth exact.
struct SynthEvent {
  std::string event_class;
  double onset_seconds = 0.0;
  double offset_seconds = 0.0;
  SourceKind kind = SourceKind::kTone;
  double param1 = 440.0;   // tone: frequency; noise band: low edge; clicks: rate
  double param2 = 0.0;     // noise band: high edge
  double amplitude = 0.3;
  int itd_samples = 0;     // positive: right channel trails the left
  double ild_db = 0.0;     // positive: right channel is quieter
};

// Noise floors at or below this level mean "no noise at all", keeping the
// exact-equality oracles exact.
inline constexpr double kNoNoiseDb = -200.0;

struct SynthSpec {
  std::string scene_label = "scene";
  std::vector<SynthEvent> events;
  double duration_seconds = 2.0;
  int sample_rate = 16000;
  double noise_floor_db = kNoNoiseDb;
  uint64_t seed = 0;

  void Validate() const;
};

// Renders the binaural clip and its exact metadata. Left is the sum of the
// sources plus noise; right is the same sources delayed and attenuated per
// event, plus independent noise.
std::pair<AudioClip, ClipMeta> Render(const SynthSpec& spec);

// JSON form of a SynthSpec (the `synth` command input); throws ParseError
// naming the offending field.
SynthSpec SynthSpecFromJson(const std::string& json_text);

struct MicroCorpus {
  std::string directory;
  std::string manifest_path;
  std::vector<std::string> wav_paths;
};

// Deterministic 8-clip training corpus: two scenes, four event classes,
// every class confined to one scene. Clip lengths give exactly 100 analysis
// frames at 16 kHz with the 40 ms / 50% framing. Writes WAV, annotation,
// and manifest files into the directory.
MicroCorpus MakeMicroCorpus(const std::string& directory, uint64_t seed);

// The fixed micro-corpus recipe parameters, shared with the experiments.
inline constexpr int kMicroSampleRate = 16000;
inline constexpr int kMicroClipSamples = 640 + 99 * 320;  // exactly 100 frames
inline constexpr int kMicroClipCount = 8;

}  // namespace bsk

#endif  // BSK_SYNTH_H_
