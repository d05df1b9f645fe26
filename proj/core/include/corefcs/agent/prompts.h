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


// Prompt templates for the mention checker, cluster checker and cluster
// splitter, and parsers for the replies they ask for.

#ifndef COREFCS_AGENT_PROMPTS_H_
#define COREFCS_AGENT_PROMPTS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corefcs/agent/annotate.h"

namespace corefcs {

enum class RequestKind { kMentionCheck, kClusterCheck, kClusterSplit };

RequestKind ParseRequestKind(std::string_view name);
std::string_view RequestKindName(RequestKind kind);

// Raw template with "{{name}}" placeholders.
const std::string& PromptTemplate(RequestKind kind);

std::string RenderMentionCheckPrompt(std::string_view context);
// kind must be kClusterCheck or kClusterSplit.
std::string RenderClusterPrompt(RequestKind kind,
                                const ClusterContext& context);

enum class VerdictValue { kYes, kNo, kPending };
std::string_view VerdictName(VerdictValue value);

struct Verdict {
  VerdictValue value = VerdictValue::kPending;
  std::string reason;
};

// The reply's final word, with surrounding punctuation removed, must be Yes,
// No or Pending (any case). Throws VerdictParseError otherwise.
Verdict ParseVerdict(std::string_view raw);

struct Regrouping {
  // 1-based mention numbers, ascending within each group, groups ordered by
  // their smallest number. Empty on failure.
  std::vector<std::vector<int>> groups;
  std::optional<std::string> failure_reason;
  std::string reason;

  bool ok() const { return !failure_reason.has_value(); }
};

// Reads the trailing run of "[#a,#b,...]" groups and checks that they
// partition 1..k. A reply carrying "Correction failed:" and no trailing
// groups is a failure with the text after the marker as reason. Throws
// InvalidRegroupingError for anything else.
Regrouping ParseRegrouping(std::string_view raw, int k);

}  // namespace corefcs

#endif  // COREFCS_AGENT_PROMPTS_H_
