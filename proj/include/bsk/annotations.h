// include/bsk/annotations.h

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

#ifndef BSK_ANNOTATIONS_H_
#define BSK_ANNOTATIONS_H_

#include <string>
#include <vector>

namespace bsk {

// One labelled event interval, [onset, offset) in seconds.
struct AnnotationEvent {
  double onset = 0.0;
  double offset = 0.0;
  std::string label;
};

// Event list of one recording plus its scene label.
struct ClipMeta {
  std::string audio_path;
  std::string scene_label;
  std::vector<AnnotationEvent> events;
};

// Parses "onset offset label" lines (tab- or space-separated). Lines may
// carry extra leading columns (audio filename, scene label); the event
// triple is read from the first numeric pair onward and the remaining
// columns form the label. Errors carry the 1-based line number.
std::vector<AnnotationEvent> ParseAnnotations(const std::string& text);
std::vector<AnnotationEvent> ParseAnnotationFile(const std::string& path);

// Canonical three-column form; parse . serialize is idempotent on files
// produced by this writer.
std::string SerializeAnnotations(const std::vector<AnnotationEvent>& events);

// One recording per line: "audio_path<TAB>scene_label<TAB>annotation_path".
struct ManifestEntry {
  std::string audio_path;
  std::string scene_label;
  std::string annotation_path;
};

std::vector<ManifestEntry> ParseManifest(const std::string& text);
std::vector<ManifestEntry> ParseManifestFile(const std::string& path);
std::string SerializeManifest(const std::vector<ManifestEntry>& entries);

// Entry paths may be relative to the manifest's own directory.
std::string ResolveManifestPath(const std::string& manifest_path,
                                const std::string& entry_path);

// Ordered event and scene class lists. Orders are the lexicographically
// sorted label strings, so the same corpus always yields the same indices.
struct LabelVocabulary {
  std::vector<std::string> event_classes;
  std::vector<std::string> scene_classes;

  // Throws InputError naming the label when it is not in the vocabulary.
  int EventIndex(const std::string& label) const;
  int SceneIndex(const std::string& label) const;

  static LabelVocabulary Build(const std::vector<ClipMeta>& metas);
};

}  // namespace bsk

#endif  // BSK_ANNOTATIONS_H_
