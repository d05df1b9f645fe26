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


#include "corefcs/agent/annotate.h"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "corefcs/base/error.h"

namespace corefcs {
namespace {

struct Window {
  int first;  // token range, inclusive
  int last;
};

Window SentenceWindow(const Document& doc, int first_sentence,
                      int last_sentence) {
  first_sentence = std::max(0, first_sentence);
  return {doc.SentenceStart(first_sentence),
          doc.sentence_ends[last_sentence]};
}

void CheckSpan(const Document& doc, const Span& s) {
  if (s.start < 0 || s.start > s.end || s.end >= doc.size()) {
    throw ValidationError(fmt::format("{}: span [{}, {}] outside {} tokens",
                                      doc.doc_id, s.start, s.end, doc.size()));
  }
}

}  // namespace

std::string AnnotateMentionContext(const Document& doc, const Mention& mention,
                                   int n_prev_sentences) {
  CheckSpan(doc, mention.span());
  const Window w =
      SentenceWindow(doc, doc.SentenceOf(mention.start) - n_prev_sentences,
                     doc.SentenceOf(mention.end));
  std::string out;
  for (int t = w.first; t <= w.last; ++t) {
    if (t > w.first) out += ' ';
    if (t == mention.start) out += '[';
    out += doc.tokens[t];
    if (t == mention.end) out += ']';
  }
  return out;
}

ClusterContext AnnotateClusterContext(const Document& doc,
                                      const Cluster& cluster) {
  if (cluster.mentions.empty()) {
    throw ValidationError("cannot annotate an empty cluster");
  }
  int first = doc.size(), last = -1;
  for (const Mention& m : cluster.mentions) {
    CheckSpan(doc, m.span());
    first = std::min(first, m.start);
    last = std::max(last, m.end);
  }
  const Window w =
      SentenceWindow(doc, doc.SentenceOf(first), doc.SentenceOf(last));

  const int k = static_cast<int>(cluster.mentions.size());
  ClusterContext out;
  for (int i = 0; i < k; ++i) {
    if (i > 0) out.numbered_mentions += ", ";
    out.numbered_mentions +=
        fmt::format("#{}:{}", i + 1, cluster.mentions[i].text);
  }

  // Openers at a token: longer span first. Closers: later start first.
  std::vector<std::vector<int>> opens(doc.size()), closes(doc.size());
  for (int i = 0; i < k; ++i) {
    opens[cluster.mentions[i].start].push_back(i);
    closes[cluster.mentions[i].end].push_back(i);
  }
  for (int t = w.first; t <= w.last; ++t) {
    if (t > w.first) {
      out.original_text += ' ';
      out.marked_text += ' ';
    }
    out.original_text += doc.tokens[t];
    auto& o = opens[t];
    std::stable_sort(o.begin(), o.end(), [&](int a, int b) {
      return cluster.mentions[a].end > cluster.mentions[b].end;
    });
    for (int i : o) out.marked_text += fmt::format("[(#{})", i + 1);
    out.marked_text += doc.tokens[t];
    auto& c = closes[t];
    std::stable_sort(c.begin(), c.end(), [&](int a, int b) {
      return cluster.mentions[a].start > cluster.mentions[b].start;
    });
    for (int i : c) out.marked_text += fmt::format("](#{})", i + 1);
  }
  return out;
}

}  // namespace corefcs
