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

#include "corefcs/corpus/document.h"

#include <algorithm>

#include <fmt/format.h>

#include "corefcs/base/error.h"

namespace corefcs {

std::vector<Span> Cluster::spans() const {
  std::vector<Span> out;
  out.reserve(mentions.size());
  for (const Mention& m : mentions) out.push_back(m.span());
  return out;
}

int Document::SentenceOf(int token) const {
  auto it = std::lower_bound(sentence_ends.begin(), sentence_ends.end(), token);
  if (it == sentence_ends.end()) {
    throw ValidationError(
        fmt::format("token {} is past the last sentence of {}", token, doc_id));
  }
  return static_cast<int>(it - sentence_ends.begin());
}

int Document::SentenceStart(int sentence) const {
  return sentence == 0 ? 0 : sentence_ends[sentence - 1] + 1;
}

bool Document::IsEos(int token) const {
  return std::binary_search(sentence_ends.begin(), sentence_ends.end(), token);
}

std::string Document::Join(int start, int end) const {
  std::string out;
  for (int i = start; i <= end; ++i) {
    if (i > start) out += ' ';
    out += tokens[i];
  }
  return out;
}

Mention Document::MakeMention(int start, int end) const {
  if (start < 0 || end < start || end >= size()) {
    throw ValidationError(fmt::format("span [{}, {}] invalid for {} tokens",
                                      start, end, size()));
  }
  Mention m;
  m.start = start;
  m.end = end;
  m.text = Join(start, end);
  return m;
}

std::vector<Span> Document::GoldMentionSpans() const {
  std::vector<Span> out;
  for (const Cluster& c : gold_clusters) {
    for (const Mention& m : c.mentions) out.push_back(m.span());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SpanPartition Document::GoldPartition() const {
  return ToPartition(gold_clusters);
}

void Document::Validate() const {
  if (tokens.empty()) {
    throw ValidationError(fmt::format("document {} has no tokens", doc_id));
  }
  if (sentence_ends.empty() || sentence_ends.back() != size() - 1) {
    throw ValidationError(
        fmt::format("document {}: last sentence end must be {}", doc_id,
                    size() - 1));
  }
  for (size_t i = 1; i < sentence_ends.size(); ++i) {
    if (sentence_ends[i] <= sentence_ends[i - 1]) {
      throw ValidationError(fmt::format(
          "document {}: sentence ends not strictly increasing", doc_id));
    }
  }
  if (sentence_ends.front() < 0) {
    throw ValidationError(fmt::format("document {}: negative EOS", doc_id));
  }
  for (const Cluster& c : gold_clusters) {
    for (size_t i = 0; i < c.mentions.size(); ++i) {
      const Mention& m = c.mentions[i];
      if (m.start < 0 || m.end < m.start || m.end >= size()) {
        throw ValidationError(fmt::format(
            "document {}: gold span [{}, {}] out of range", doc_id, m.start,
            m.end));
      }
      if (i > 0 && !(c.mentions[i - 1].span() < m.span())) {
        throw ValidationError(fmt::format(
            "document {}: gold cluster not sorted or has duplicates", doc_id));
      }
    }
  }
}

Cluster MakeCluster(const Document& doc, std::vector<Span> spans) {
  std::sort(spans.begin(), spans.end());
  spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
  Cluster c;
  c.mentions.reserve(spans.size());
  for (const Span& s : spans) c.mentions.push_back(doc.MakeMention(s));
  return c;
}

SpanPartition ToPartition(const std::vector<Cluster>& clusters) {
  SpanPartition out;
  out.reserve(clusters.size());
  for (const Cluster& c : clusters) out.push_back(c.spans());
  return out;
}

}  // namespace corefcs
