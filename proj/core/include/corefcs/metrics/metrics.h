// Copyright 2026 The corefcs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Coreference scores: MUC, B-cubed, CEAF-phi4 and mention detection.
// Partitions are lists of clusters of inclusive spans. Corpus scores are
// micro-averaged: numerators and denominators are summed over documents
// before dividing.

#ifndef COREFCS_METRICS_METRICS_H_
#define COREFCS_METRICS_METRICS_H_

#include <span>
#include <string>
#include <vector>

#include "corefcs/corpus/document.h"

namespace corefcs {

struct Score {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

double F1(double precision, double recall);

// Precision and recall as unreduced ratios.
struct ScoreCounts {
  double p_num = 0.0;
  double p_den = 0.0;
  double r_num = 0.0;
  double r_den = 0.0;

  ScoreCounts& operator+=(const ScoreCounts& other);
  // A zero denominator yields 0 for that ratio.
  Score ToScore() const;
};

ScoreCounts MucCounts(const SpanPartition& gold, const SpanPartition& pred);
ScoreCounts BCubedCounts(const SpanPartition& gold, const SpanPartition& pred);
ScoreCounts CeafPhi4Counts(const SpanPartition& gold,
                           const SpanPartition& pred);
ScoreCounts MentionCounts(std::span<const Span> gold,
                          std::span<const Span> pred);

Score Muc(const SpanPartition& gold, const SpanPartition& pred);
Score BCubed(const SpanPartition& gold, const SpanPartition& pred);
Score CeafPhi4(const SpanPartition& gold, const SpanPartition& pred);
Score MentionPrf(std::span<const Span> gold, std::span<const Span> pred);

double AvgF1(const Score& muc, const Score& b_cubed, const Score& ceaf);

// Maximum-weight assignment of rows to columns of a rows x cols weight
// matrix (row-major). Returns, for each row, its column or -1. Hungarian
// algorithm, O(n^3) with n = max(rows, cols).
std::vector<int> MaxWeightAssignment(const std::vector<double>& weights,
                                     int rows, int cols);

SpanPartition DropSingletons(const SpanPartition& partition);

struct CorpusScores {
  Score muc;
  Score b_cubed;
  Score ceaf;
  Score mention;
  double avg_f1 = 0.0;
};

class CorpusEvaluator {
 public:
  void Add(const SpanPartition& gold, const SpanPartition& pred);
  CorpusScores Result() const;
  int documents() const { return documents_; }

 private:
  ScoreCounts muc_, b_cubed_, ceaf_, mention_;
  int documents_ = 0;
};

// Fixed-width table: one row per metric with P, R, F1 in percent, then
// Avg.F1.
std::string FormatScoreTable(const CorpusScores& scores);
// Same numbers as a single-line JSON object (fractions, not percent).
std::string ScoresToJson(const CorpusScores& scores);

}  // namespace corefcs

#endif  // COREFCS_METRICS_METRICS_H_
