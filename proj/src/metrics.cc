// src/metrics.cc

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

#include "bsk/metrics.h"

#include <algorithm>
#include <cmath>

#include "bsk/error.h"
#include "json.hpp"

namespace bsk {

void SegmentScores::Merge(const SegmentScores& other) {
  n_ref += other.n_ref;
  subs += other.subs;
  dels += other.dels;
  ins += other.ins;
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
}

double SegmentScores::ErrorRate(bool* infinite) const {
  const long long errors = subs + dels + ins;
  if (infinite != nullptr) *infinite = false;
  if (n_ref == 0) {
    if (errors == 0) return 0.0;
    if (infinite != nullptr) *infinite = true;
    return std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(errors) / static_cast<double>(n_ref);
}

double SegmentScores::F1Percent() const {
  const long long denom = 2 * tp + fp + fn;
  if (denom == 0) return 0.0;
  return 100.0 * 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

BinaryMatrix Segmentize(const BinaryMatrix& frame_activity, double frame_hop_seconds,
                        double segment_length_seconds) {
  if (frame_hop_seconds <= 0.0 || segment_length_seconds < frame_hop_seconds) {
    throw ConfigError("Segmentize: need segment_length >= frame_hop > 0");
  }
  const size_t frames = frame_activity.rows;
  const size_t classes = frame_activity.cols;
  if (frames == 0) return BinaryMatrix(0, classes);

  // Segment count: segments cover [0, frames * hop). Locate the last segment
  // whose start lies strictly before the end of the final frame, probing the
  // exact float predicate around the quotient estimate.
  const double clip_end = static_cast<double>(frames) * frame_hop_seconds;
  size_t last = static_cast<size_t>(
      std::max(0.0, std::floor(clip_end / segment_length_seconds)));
  while (static_cast<double>(last) * segment_length_seconds >= clip_end && last > 0) {
    --last;
  }
  while (static_cast<double>(last + 1) * segment_length_seconds < clip_end) {
    ++last;
  }
  const size_t segments = last + 1;

  BinaryMatrix out(segments, classes);
  for (size_t n = 0; n < frames; ++n) {
    const double frame_start = static_cast<double>(n) * frame_hop_seconds;
    const double frame_end = static_cast<double>(n + 1) * frame_hop_seconds;
    // Candidate segments around this frame.
    size_t s_lo = static_cast<size_t>(
        std::max(0.0, std::floor(frame_start / segment_length_seconds) - 1.0));
    for (size_t s = s_lo; s < segments; ++s) {
      const double seg_start = static_cast<double>(s) * segment_length_seconds;
      if (seg_start >= frame_end) break;
      const double seg_end = static_cast<double>(s + 1) * segment_length_seconds;
      if (frame_start >= seg_end) continue;
      for (size_t c = 0; c < classes; ++c) {
        if (frame_activity.at(n, c)) out.at(s, c) = 1;
      }
    }
  }
  return out;
}

SegmentScores SedScores(const BinaryMatrix& reference, const BinaryMatrix& prediction) {
  if (reference.rows != prediction.rows || reference.cols != prediction.cols) {
    throw ShapeError("SedScores: reference and prediction shapes differ");
  }
  SegmentScores scores;
  for (size_t s = 0; s < reference.rows; ++s) {
    long long seg_tp = 0, seg_fp = 0, seg_fn = 0;
    for (size_t c = 0; c < reference.cols; ++c) {
      const bool ref = reference.at(s, c) != 0;
      const bool pred = prediction.at(s, c) != 0;
      if (ref && pred) ++seg_tp;
      if (!ref && pred) ++seg_fp;
      if (ref && !pred) ++seg_fn;
      if (ref) ++scores.n_ref;
    }
    scores.tp += seg_tp;
    scores.fp += seg_fp;
    scores.fn += seg_fn;
    scores.subs += std::min(seg_fn, seg_fp);
    scores.dels += std::max(0LL, seg_fn - seg_fp);
    scores.ins += std::max(0LL, seg_fp - seg_fn);
  }
  return scores;
}

namespace {

void CheckAscInput(const std::vector<int>& reference, const std::vector<int>& prediction,
                   int num_classes) {
  if (reference.size() != prediction.size()) {
    throw InputError("scene F1: reference and prediction lengths differ");
  }
  for (const auto& v : {reference, prediction}) {
    for (int c : v) {
      if (c < 0 || c >= num_classes) {
        throw InputError("scene F1: class index out of range");
      }
    }
  }
}

}  // namespace

double AscF1Micro(const std::vector<int>& reference, const std::vector<int>& prediction,
                  int num_classes) {
  CheckAscInput(reference, prediction, num_classes);
  long long tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < reference.size(); ++i) {
    if (reference[i] == prediction[i]) {
      ++tp;
    } else {
      ++fp;  // the predicted class gains a false positive
      ++fn;  // the reference class gains a false negative
    }
  }
  const long long denom = 2 * tp + fp + fn;
  if (denom == 0) return 0.0;
  return 100.0 * 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

double AscF1Macro(const std::vector<int>& reference, const std::vector<int>& prediction,
                  int num_classes) {
  CheckAscInput(reference, prediction, num_classes);
  double sum = 0.0;
  for (int c = 0; c < num_classes; ++c) {
    long long tp = 0, fp = 0, fn = 0;
    for (size_t i = 0; i < reference.size(); ++i) {
      const bool ref = reference[i] == c;
      const bool pred = prediction[i] == c;
      if (ref && pred) ++tp;
      if (!ref && pred) ++fp;
      if (ref && !pred) ++fn;
    }
    const long long denom = 2 * tp + fp + fn;
    sum += denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / denom;
  }
  return 100.0 * sum / std::max(1, num_classes);
}

std::string MetricsReportJson(const std::string& mode, const SegmentScores* sed,
                              double granularity_seconds, const double* asc_f1) {
  nlohmann::json doc;
  doc["mode"] = mode;
  if (sed != nullptr) {
    bool infinite = false;
    const double er = sed->ErrorRate(&infinite);
    nlohmann::json s;
    if (infinite) {
      s["er"] = nullptr;
    } else {
      s["er"] = er;
    }
    s["er_infinite"] = infinite;
    s["f1"] = sed->F1Percent();
    s["granularity_s"] = granularity_seconds;
    s["counts"] = {{"n", sed->n_ref}, {"s", sed->subs}, {"d", sed->dels},
                   {"i", sed->ins},   {"tp", sed->tp},  {"fp", sed->fp},
                   {"fn", sed->fn}};
    doc["sed"] = s;
  }
  if (asc_f1 != nullptr) {
    doc["asc"] = {{"f1", *asc_f1}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace bsk
