// src/synth.cc

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

#include "bsk/synth.h"

#include <cmath>
#include <filesystem>

#include "bsk/error.h"
#include "bsk/io_util.h"
#include "bsk/rng.h"
#include "bsk/wav.h"
#include "json.hpp"

namespace bsk {

void SynthSpec::Validate() const {
  if (sample_rate <= 0) throw ConfigError("SynthSpec: sample_rate must be positive");
  if (duration_seconds <= 0.0) {
    throw ConfigError("SynthSpec: duration must be positive");
  }
  for (const auto& ev : events) {
    if (std::abs(ev.itd_samples) > 64) {
      throw ConfigError("SynthSpec: |itd| must be at most 64 samples");
    }
    if (!(ev.onset_seconds >= 0.0 && ev.onset_seconds < ev.offset_seconds &&
          ev.offset_seconds <= duration_seconds)) {
      throw ConfigError("SynthSpec: event interval outside the clip duration");
    }
  }
}

namespace {

// A deterministic source signal evaluated at integer sample positions.
// Noise bands are sums of fixed random-phase sinusoids so a delayed copy is
// exactly the same function shifted.
class SourceSignal {
 public:
  SourceSignal(const SynthEvent& event, int sample_rate, Rng* rng)
      : event_(event), sample_rate_(sample_rate) {
    if (event.kind == SourceKind::kNoiseBand) {
      const double lo = std::max(1.0, event.param1);
      const double hi = std::max(lo + 1.0, event.param2);
      const int components = 48;
      freqs_.resize(components);
      phases_.resize(components);
      for (int k = 0; k < components; ++k) {
        freqs_[k] = lo + (hi - lo) * (k + 0.5) / components;
        phases_[k] = rng->Uniform(0.0, 2.0 * M_PI);
      }
      scale_ = std::sqrt(2.0 / components);
    } else if (event.kind == SourceKind::kClickTrain) {
      const double rate = std::max(1e-6, event.param1);
      const long long on = OnsetSample();
      const long long off = OffsetSample();
      for (double t = event_.onset_seconds; t < event_.offset_seconds;
           t += 1.0 / rate) {
        const long long p = std::llround(t * sample_rate_);
        if (p >= on && p < off) clicks_.push_back(p);
      }
    }
  }

  long long OnsetSample() const {
    return std::llround(event_.onset_seconds * sample_rate_);
  }
  long long OffsetSample() const {
    return std::llround(event_.offset_seconds * sample_rate_);
  }

  // Value at sample t, zero outside the event interval.
  double At(long long t) const {
    if (t < OnsetSample() || t >= OffsetSample()) return 0.0;
    switch (event_.kind) {
      case SourceKind::kTone: {
        const double phase = 2.0 * M_PI * event_.param1 *
                             static_cast<double>(t - OnsetSample()) / sample_rate_;
        return event_.amplitude * std::sin(phase);
      }
      case SourceKind::kNoiseBand: {
        double acc = 0.0;
        for (size_t k = 0; k < freqs_.size(); ++k) {
          acc += std::sin(2.0 * M_PI * freqs_[k] * static_cast<double>(t) /
                              sample_rate_ +
                          phases_[k]);
        }
        return event_.amplitude * scale_ * acc;
      }
      case SourceKind::kClickTrain: {
        for (long long p : clicks_) {
          if (p == t) return event_.amplitude;
        }
        return 0.0;
      }
    }
    return 0.0;
  }

 private:
  SynthEvent event_;
  int sample_rate_;
  std::vector<double> freqs_, phases_;
  double scale_ = 1.0;
  std::vector<long long> clicks_;
};

}  // namespace

std::pair<AudioClip, ClipMeta> Render(const SynthSpec& spec) {
  spec.Validate();
  const size_t length =
      static_cast<size_t>(std::llround(spec.duration_seconds * spec.sample_rate));
  std::vector<double> left(length, 0.0), right(length, 0.0);

  Rng rng(spec.seed);
  for (const auto& event : spec.events) {
    const SourceSignal source(event, spec.sample_rate, &rng);
    const double gain = std::pow(10.0, -event.ild_db / 20.0);
    const long long itd = event.itd_samples;
    // The right channel hears the same source itd samples later.
    for (long long t = 0; t < static_cast<long long>(length); ++t) {
      const double s = source.At(t);
      if (s != 0.0) left[t] += s;
      const double delayed = source.At(t - itd);
      if (delayed != 0.0) right[t] += gain * delayed;
    }
  }

  if (spec.noise_floor_db > kNoNoiseDb) {
    const double amp = std::pow(10.0, spec.noise_floor_db / 20.0);
    for (auto& v : left) v += amp * rng.Uniform(-1.0, 1.0);
    for (auto& v : right) v += amp * rng.Uniform(-1.0, 1.0);
  }

  ClipMeta meta;
  meta.scene_label = spec.scene_label;
  for (const auto& event : spec.events) {
    meta.events.push_back({event.onset_seconds, event.offset_seconds,
                           event.event_class});
  }
  return {AudioClip({std::move(left), std::move(right)}, spec.sample_rate),
          std::move(meta)};
}

namespace {

SourceKind SourceKindFromName(const std::string& name) {
  if (name == "tone") return SourceKind::kTone;
  if (name == "noise_band") return SourceKind::kNoiseBand;
  if (name == "click_train") return SourceKind::kClickTrain;
  throw ParseError("synth spec: unknown source kind '" + name + "'");
}

}  // namespace

SynthSpec SynthSpecFromJson(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("synth spec: invalid JSON: ") + e.what());
  }
  SynthSpec spec;
  try {
    if (doc.contains("scene_label")) spec.scene_label = doc.at("scene_label");
    if (doc.contains("duration_s")) spec.duration_seconds = doc.at("duration_s");
    if (doc.contains("sample_rate")) spec.sample_rate = doc.at("sample_rate");
    if (doc.contains("noise_floor_db")) spec.noise_floor_db = doc.at("noise_floor_db");
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<uint64_t>();
    if (doc.contains("events")) {
      for (const auto& ej : doc.at("events")) {
        SynthEvent ev;
        ev.event_class = ej.at("class");
        ev.onset_seconds = ej.at("onset");
        ev.offset_seconds = ej.at("offset");
        ev.kind = SourceKindFromName(ej.at("kind"));
        switch (ev.kind) {
          case SourceKind::kTone:
            ev.param1 = ej.at("freq_hz");
            break;
          case SourceKind::kNoiseBand:
            ev.param1 = ej.at("band")[0];
            ev.param2 = ej.at("band")[1];
            break;
          case SourceKind::kClickTrain:
            ev.param1 = ej.at("rate_hz");
            break;
        }
        if (ej.contains("amplitude")) ev.amplitude = ej.at("amplitude");
        if (ej.contains("itd_samples")) ev.itd_samples = ej.at("itd_samples");
        if (ej.contains("ild_db")) ev.ild_db = ej.at("ild_db");
        spec.events.push_back(std::move(ev));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("synth spec: ") + e.what());
  }
  spec.Validate();
  return spec;
}

MicroCorpus MakeMicroCorpus(const std::string& directory, uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);

  struct ClassRecipe {
    const char* name;
    SourceKind kind;
    double param1, param2;
    int itd;
    double ild_db;
  };
  // Two scenes, two classes each; every class has its own spectral content
  // and its own direction so spatial features carry class information.
  const ClassRecipe park_classes[2] = {
      {"bird", SourceKind::kTone, 3000.0, 0.0, 6, 3.0},
      {"wind", SourceKind::kNoiseBand, 300.0, 1500.0, -6, -3.0},
  };
  const ClassRecipe office_classes[2] = {
      {"keyboard", SourceKind::kClickTrain, 30.0, 0.0, 4, 2.0},
      {"phone", SourceKind::kTone, 950.0, 0.0, -4, -2.0},
  };

  const double duration =
      static_cast<double>(kMicroClipSamples) / kMicroSampleRate;
  Rng rng = Rng(seed).Fork(0x5eed);

  MicroCorpus corpus;
  corpus.directory = directory;
  std::vector<ManifestEntry> manifest;

  for (int i = 0; i < kMicroClipCount; ++i) {
    const bool park = i < kMicroClipCount / 2;
    const auto& classes = park ? park_classes : office_classes;

    SynthSpec spec;
    spec.scene_label = park ? "park" : "office";
    spec.duration_seconds = duration;
    spec.sample_rate = kMicroSampleRate;
    spec.noise_floor_db = -45.0;
    spec.seed = seed * 1000 + static_cast<uint64_t>(i);

    // Three to five events; both scene classes always present.
    const int n_events = 3 + static_cast<int>(rng.Bounded(3));
    for (int e = 0; e < n_events; ++e) {
      const ClassRecipe& recipe = classes[e < 2 ? e : rng.Bounded(2)];
      SynthEvent ev;
      ev.event_class = recipe.name;
      const double length = rng.Uniform(0.35, 0.8);
      ev.onset_seconds = rng.Uniform(0.05, duration - length - 0.05);
      ev.offset_seconds = ev.onset_seconds + length;
      ev.kind = recipe.kind;
      ev.param1 = recipe.param1;
      ev.param2 = recipe.param2;
      ev.amplitude = rng.Uniform(0.22, 0.34);
      ev.itd_samples = recipe.itd;
      ev.ild_db = recipe.ild_db;
      spec.events.push_back(std::move(ev));
    }

    auto [clip, meta] = Render(spec);
    char stem[32];
    std::snprintf(stem, sizeof stem, "clip_%02d", i);
    const std::string wav_name = std::string(stem) + ".wav";
    const std::string ann_name = std::string(stem) + ".ann";
    const std::string wav_path = (fs::path(directory) / wav_name).string();
    WriteWav16(wav_path, clip);
    WriteFileText((fs::path(directory) / ann_name).string(),
                  SerializeAnnotations(meta.events));
    // Manifest paths are relative to the manifest itself, so a corpus is
    // byte-identical wherever it lands.
    manifest.push_back({wav_name, spec.scene_label, ann_name});
    corpus.wav_paths.push_back(wav_path);
  }

  corpus.manifest_path = (fs::path(directory) / "manifest.tsv").string();
  WriteFileText(corpus.manifest_path, SerializeManifest(manifest));
  return corpus;
}

}  // namespace bsk
