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


// Context annotation for LLM review. Mention checks mark one span with
// square brackets; cluster checks number the cluster's mentions in document
// order and wrap each occurrence in "[(#X)" ... "](#X)".

#ifndef COREFCS_AGENT_ANNOTATE_H_
#define COREFCS_AGENT_ANNOTATE_H_

#include <string>

#include "corefcs/corpus/document.h"

namespace corefcs {

// Sentences from `n_prev_sentences` before the mention's first sentence
// through its last sentence, space-joined, with the mention wrapped as
// "[...]".
std::string AnnotateMentionContext(const Document& doc, const Mention& mention,
                                   int n_prev_sentences);

struct ClusterContext {
  // Plain text of the sentence window spanning the cluster.
  std::string original_text;
  // "#1:text, #2:text, ..."
  std::string numbered_mentions;
  // original_text with every mention marked.
  std::string marked_text;
};

// Mentions are numbered in (start, end) order, which is the order of
// cluster.mentions. Nested spans are marked so that markers stay balanced:
// at a shared token the outer span opens first and the inner span closes
// first.
ClusterContext AnnotateClusterContext(const Document& doc,
                                      const Cluster& cluster);

}  // namespace corefcs

#endif  // COREFCS_AGENT_ANNOTATE_H_
