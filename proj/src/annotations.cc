// src/annotations.cc

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

#include "bsk/annotations.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "bsk/error.h"
#include "bsk/io_util.h"

namespace bsk {

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  // TUT annotation files are tab-separated and may have labels containing
  // spaces; fall back to whitespace splitting only when no tab is present.
  if (line.find('\t') != std::string::npos) {
    size_t start = 0;
    while (start <= line.size()) {
      size_t tab = line.find('\t', start);
      if (tab == std::string::npos) tab = line.size();
      const std::string field = Trim(line.substr(start, tab - start));
      if (!field.empty()) fields.push_back(field);
      start = tab + 1;
    }
  } else {
    std::istringstream ss(line);
    std::string field;
    while (ss >> field) fields.push_back(field);
  }
  return fields;
}

bool ParseNumber(const std::string& s, double* out) {
  try {
    size_t pos = 0;
    *out = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::vector<AnnotationEvent> ParseAnnotations(const std::string& text) {
  std::vector<AnnotationEvent> events;
  const auto lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string line = Trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = SplitFields(line);

    // Locate the first adjacent numeric pair followed by a label.
    size_t pair_at = fields.size();
    double onset = 0.0, offset = 0.0;
    for (size_t f = 0; f + 2 < fields.size(); ++f) {
      double a, b;
      if (ParseNumber(fields[f], &a) && ParseNumber(fields[f + 1], &b)) {
        pair_at = f;
        onset = a;
        offset = b;
        break;
      }
    }
    if (pair_at == fields.size()) {
      throw ParseError("line " + std::to_string(i + 1) +
                       ": expected numeric onset and offset followed by a label");
    }
    std::string label = fields[pair_at + 2];
    for (size_t f = pair_at + 3; f < fields.size(); ++f) label += " " + fields[f];

    if (onset < 0.0) {
      throw ParseError("line " + std::to_string(i + 1) + ": negative onset");
    }
    if (offset <= onset) {
      throw ParseError("line " + std::to_string(i + 1) +
                       ": offset must exceed onset");
    }
    events.push_back({onset, offset, label});
  }
  return events;
}

std::vector<AnnotationEvent> ParseAnnotationFile(const std::string& path) {
  try {
    return ParseAnnotations(ReadFileText(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string SerializeAnnotations(const std::vector<AnnotationEvent>& events) {
  std::string out;
  char buf[64];
  for (const auto& ev : events) {
    std::snprintf(buf, sizeof buf, "%.6f\t%.6f\t", ev.onset, ev.offset);
    out += buf;
    out += ev.label;
    out += '\n';
  }
  return out;
}

std::vector<ManifestEntry> ParseManifest(const std::string& text) {
  std::vector<ManifestEntry> entries;
  const auto lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string line = Trim(lines[i]);
    if (line.empty()) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != 3) {
      throw ParseError("manifest line " + std::to_string(i + 1) +
                       ": expected audio<TAB>scene<TAB>annotations");
    }
    entries.push_back({fields[0], fields[1], fields[2]});
  }
  return entries;
}

std::vector<ManifestEntry> ParseManifestFile(const std::string& path) {
  try {
    return ParseManifest(ReadFileText(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string ResolveManifestPath(const std::string& manifest_path,
                                const std::string& entry_path) {
  const std::filesystem::path entry(entry_path);
  if (entry.is_absolute()) return entry_path;
  return (std::filesystem::path(manifest_path).parent_path() / entry).string();
}

std::string SerializeManifest(const std::vector<ManifestEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.audio_path + "\t" + e.scene_label + "\t" + e.annotation_path + "\n";
  }
  return out;
}

int LabelVocabulary::EventIndex(const std::string& label) const {
  const auto it = std::lower_bound(event_classes.begin(), event_classes.end(), label);
  if (it == event_classes.end() || *it != label) {
    throw InputError("unknown event class: " + label);
  }
  return static_cast<int>(it - event_classes.begin());
}

int LabelVocabulary::SceneIndex(const std::string& label) const {
  const auto it = std::lower_bound(scene_classes.begin(), scene_classes.end(), label);
  if (it == scene_classes.end() || *it != label) {
    throw InputError("unknown scene class: " + label);
  }
  return static_cast<int>(it - scene_classes.begin());
}

LabelVocabulary LabelVocabulary::Build(const std::vector<ClipMeta>& metas) {
  std::set<std::string> events, scenes;
  for (const auto& meta : metas) {
    scenes.insert(meta.scene_label);
    for (const auto& ev : meta.events) events.insert(ev.label);
  }
  LabelVocabulary vocab;
  vocab.event_classes.assign(events.begin(), events.end());
  vocab.scene_classes.assign(scenes.begin(), scenes.end());
  return vocab;
}

}  // namespace bsk
