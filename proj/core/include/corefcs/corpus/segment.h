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

#ifndef COREFCS_CORPUS_SEGMENT_H_
#define COREFCS_CORPUS_SEGMENT_H_

#include <string>
#include <string_view>
#include <vector>

#include "corefcs/corpus/document.h"

namespace corefcs {

enum class SegmentStrategy { kIndependent, kOverlapping };

SegmentStrategy ParseSegmentStrategy(std::string_view name);
std::string_view SegmentStrategyName(SegmentStrategy strategy);

// Encoder window over [start, end) of the document's tokens. The window size
// T includes the CLS and SEP slots, so end - start <= T - 2.
struct Segment {
  std::string doc_id;
  int seg_index = 0;
  int start = 0;
  int end = 0;
  bool has_cls = true;
  bool has_sep = true;

  int length() const { return end - start; }
  bool operator==(const Segment&) const = default;
};

// Payload per window is T - 2. Independent windows are disjoint; overlapping
// windows advance by floor((T - 2) / 2). Throws ConfigError when the payload
// would be empty (T < 3).
std::vector<Segment> SegmentDocument(const Document& doc,
                                     SegmentStrategy strategy, int window);

// Distance from `token` to the first sentence end at or after it.
int EosDistance(const Document& doc, int token);

}  // namespace corefcs

#endif  // COREFCS_CORPUS_SEGMENT_H_
