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

#ifndef COREFCS_CORPUS_DOCUMENT_H_
#define COREFCS_CORPUS_DOCUMENT_H_

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace corefcs {

// Inclusive token span [start, end].
struct Span {
  int start = 0;
  int end = 0;

  int length() const { return end - start + 1; }
  bool Contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  auto operator<=>(const Span&) const = default;
};

struct Mention {
  int start = 0;
  int end = 0;
  std::string text;
  std::optional<double> p_start;
  std::optional<double> p_end;

  Span span() const { return {start, end}; }
  bool operator==(const Mention&) const = default;
};

// Mentions sorted by (start, end) plus the probabilities of the incremental
// assignment decisions that built the cluster.
struct Cluster {
  std::vector<Mention> mentions;
  std::vector<double> pair_probs;

  size_t size() const { return mentions.size(); }
  std::vector<Span> spans() const;
  bool operator==(const Cluster&) const = default;
};

// Partition of mention spans, the shape the scorers consume.
using SpanPartition = std::vector<std::vector<Span>>;

struct Document {
  std::string doc_id;
  std::vector<std::string> tokens;
  // Sorted EOS token indices; the last entry is always size() - 1.
  std::vector<int> sentence_ends;
  std::vector<Cluster> gold_clusters;
  std::optional<std::string> genre;
  // Gold spans that cross a sentence break. They are kept in gold_clusters.
  std::vector<Span> flagged_spans;

  int size() const { return static_cast<int>(tokens.size()); }
  int sentence_count() const { return static_cast<int>(sentence_ends.size()); }
  // Index of the sentence containing `token`.
  int SentenceOf(int token) const;
  int SentenceStart(int sentence) const;
  bool IsEos(int token) const;

  // Tokens [start, end] joined by single spaces.
  std::string Join(int start, int end) const;
  Mention MakeMention(int start, int end) const;
  Mention MakeMention(const Span& span) const {
    return MakeMention(span.start, span.end);
  }

  std::vector<Span> GoldMentionSpans() const;
  SpanPartition GoldPartition() const;

  // Throws ValidationError when a structural invariant does not hold.
  void Validate() const;
};

// Sorts mentions by (start, end) and builds a Cluster without probabilities.
Cluster MakeCluster(const Document& doc, std::vector<Span> spans);

SpanPartition ToPartition(const std::vector<Cluster>& clusters);

}  // namespace corefcs

#endif  // COREFCS_CORPUS_DOCUMENT_H_
