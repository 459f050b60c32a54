// include/bsk/metrics.h

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

#ifndef BSK_METRICS_H_
#define BSK_METRICS_H_

#include <string>
#include <vector>

#include "bsk/targets.h"

namespace bsk {

// Segment-based counting statistics. Substitutions pair a missed class with
// a spurious one inside the same segment; the leftovers are deletions or
// insertions. Scores merge by field-wise addition, so per-recording counts
// can be accumulated in any order.
struct SegmentScores {
  long long n_ref = 0;  // active reference entries
  long long subs = 0;
  long long dels = 0;
  long long ins = 0;
  long long tp = 0;
  long long fp = 0;
  long long fn = 0;

  void Merge(const SegmentScores& other);

  // (S + D + I) / N. With an empty reference the rate is 0 when nothing was
  // predicted either, and flagged infinite otherwise.
  double ErrorRate(bool* infinite = nullptr) const;

  // Micro-averaged F1 in percent; 0 when there is nothing to score.
  double F1Percent() const;
};

// Collapses frame activity onto a coarser segment grid: a segment is active
// for a class iff any overlapping frame is. segment_length must be at least
// frame_hop; equal lengths make this the identity.
BinaryMatrix Segmentize(const BinaryMatrix& frame_activity, double frame_hop_seconds,
                        double segment_length_seconds);

SegmentScores SedScores(const BinaryMatrix& reference, const BinaryMatrix& prediction);

// Clip-level scene F1 in percent over predicted/reference class indices.
// The micro average equals plain accuracy for single-label predictions;
// the macro variant averages per-class F1 over all classes.
double AscF1Micro(const std::vector<int>& reference, const std::vector<int>& prediction,
                  int num_classes);
double AscF1Macro(const std::vector<int>& reference, const std::vector<int>& prediction,
                  int num_classes);

// The JSON report document written by the evaluation command.
std::string MetricsReportJson(const std::string& mode, const SegmentScores* sed,
                              double granularity_seconds, const double* asc_f1);

}  // namespace bsk

#endif  // BSK_METRICS_H_
