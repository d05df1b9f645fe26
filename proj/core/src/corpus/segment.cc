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

#include "corefcs/corpus/segment.h"

#include <algorithm>

#include <fmt/format.h>

#include "corefcs/base/error.h"

namespace corefcs {

SegmentStrategy ParseSegmentStrategy(std::string_view name) {
  if (name == "independent") return SegmentStrategy::kIndependent;
  if (name == "overlapping") return SegmentStrategy::kOverlapping;
  throw ConfigError(fmt::format("unknown segment strategy '{}'", name));
}

std::string_view SegmentStrategyName(SegmentStrategy strategy) {
  return strategy == SegmentStrategy::kIndependent ? "independent"
                                                   : "overlapping";
}

std::vector<Segment> SegmentDocument(const Document& doc,
                                     SegmentStrategy strategy, int window) {
  if (window < 3) {
    throw ConfigError(fmt::format(
        "window size {} leaves no room for tokens besides CLS/SEP", window));
  }
  const int payload = window - 2;
  const int stride = strategy == SegmentStrategy::kIndependent
                         ? payload
                         : std::max(1, payload / 2);
  std::vector<Segment> out;
  const int m = doc.size();
  int start = 0;
  while (true) {
    Segment s;
    s.doc_id = doc.doc_id;
    s.seg_index = static_cast<int>(out.size());
    s.start = start;
    s.end = std::min(start + payload, m);
    out.push_back(s);
    if (s.end >= m) break;
    start += stride;
  }
  return out;
}

int EosDistance(const Document& doc, int token) {
  if (token < 0 || token >= doc.size()) {
    throw ValidationError(fmt::format("token {} outside document of {} tokens",
                                      token, doc.size()));
  }
  auto it = std::lower_bound(doc.sentence_ends.begin(),
                             doc.sentence_ends.end(), token);
  return *it - token;
}

}  // namespace corefcs
