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


#include "corefcs/agent/prompts.h"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include <fmt/format.h>

#include "corefcs/base/error.h"
#include "corefcs/base/resources.h"

namespace corefcs {
namespace {

constexpr std::string_view kFailureMarker = "Correction failed:";

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

// Substitutes {{name}} placeholders in one left-to-right pass over the
// template, so payload text is never rescanned.
std::string Fill(const std::string& tmpl,
                 std::initializer_list<std::pair<std::string_view,
                                                 std::string_view>> values) {
  std::string out;
  size_t pos = 0;
  while (true) {
    const size_t open = tmpl.find("{{", pos);
    if (open == std::string::npos) break;
    const size_t close = tmpl.find("}}", open);
    if (close == std::string::npos) break;
    const std::string_view name(tmpl.data() + open + 2, close - open - 2);
    auto it = std::find_if(values.begin(), values.end(),
                           [&](const auto& kv) { return kv.first == name; });
    out.append(tmpl, pos, open - pos);
    if (it == values.end()) {
      throw Error(fmt::format("template placeholder '{}' has no value", name));
    }
    out.append(it->second);
    pos = close + 2;
  }
  out.append(tmpl, pos, std::string::npos);
  return out;
}

}  // namespace

RequestKind ParseRequestKind(std::string_view name) {
  if (name == "mention_check") return RequestKind::kMentionCheck;
  if (name == "cluster_check") return RequestKind::kClusterCheck;
  if (name == "cluster_split") return RequestKind::kClusterSplit;
  throw ParseError(fmt::format("unknown request kind '{}'", name));
}

std::string_view RequestKindName(RequestKind kind) {
  switch (kind) {
    case RequestKind::kMentionCheck:
      return "mention_check";
    case RequestKind::kClusterCheck:
      return "cluster_check";
    case RequestKind::kClusterSplit:
      return "cluster_split";
  }
  return "mention_check";
}

const std::string& PromptTemplate(RequestKind kind) {
  return Resource(RequestKindName(kind));
}

std::string RenderMentionCheckPrompt(std::string_view context) {
  return Fill(PromptTemplate(RequestKind::kMentionCheck),
              {{"context", context}});
}

std::string RenderClusterPrompt(RequestKind kind,
                                const ClusterContext& context) {
  if (kind == RequestKind::kMentionCheck) {
    throw Error("RenderClusterPrompt needs a cluster request kind");
  }
  return Fill(PromptTemplate(kind),
              {{"original_text", context.original_text},
               {"numbered_mentions", context.numbered_mentions},
               {"marked_text", context.marked_text}});
}

std::string_view VerdictName(VerdictValue value) {
  switch (value) {
    case VerdictValue::kYes:
      return "Yes";
    case VerdictValue::kNo:
      return "No";
    case VerdictValue::kPending:
      return "Pending";
  }
  return "Pending";
}

Verdict ParseVerdict(std::string_view raw) {
  auto is_trailing = [](char c) {
    return IsSpace(c) || std::string_view(".,!?;:\"'*)]`").find(c) !=
                             std::string_view::npos;
  };
  std::string_view s = raw;
  while (!s.empty() && is_trailing(s.back())) s.remove_suffix(1);
  size_t cut = s.size();
  while (cut > 0 && !IsSpace(s[cut - 1])) --cut;
  std::string_view word = s.substr(cut);
  while (!word.empty() &&
         std::string_view("\"'*([`").find(word.front()) !=
             std::string_view::npos) {
    word.remove_prefix(1);
  }
  std::string lower(word);
  for (char& c : lower) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  Verdict v;
  if (lower == "yes") {
    v.value = VerdictValue::kYes;
  } else if (lower == "no") {
    v.value = VerdictValue::kNo;
  } else if (lower == "pending") {
    v.value = VerdictValue::kPending;
  } else {
    throw VerdictParseError(fmt::format(
        "reply does not end with Yes, No or Pending: '{}'",
        raw.substr(raw.size() > 80 ? raw.size() - 80 : 0)));
  }
  v.reason = std::string(Trim(s.substr(0, cut)));
  return v;
}

Regrouping ParseRegrouping(std::string_view raw, int k) {
  static const std::regex group_re(
      R"(\[\s*#?\s*\d+(?:\s*,\s*#?\s*\d+)*\s*\])");
  static const std::regex number_re(R"(\d+)");
  const std::string text(raw);

  // Locate the maximal run of groups that ends the reply. Only whitespace
  // and commas may separate groups; only whitespace or a period may follow.
  std::vector<std::pair<size_t, size_t>> run;  // [begin, end) offsets
  std::vector<std::pair<size_t, size_t>> all;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), group_re);
       it != std::sregex_iterator(); ++it) {
    all.push_back({static_cast<size_t>(it->position()),
                   static_cast<size_t>(it->position() + it->length())});
  }
  auto only = [&](size_t from, size_t to, std::string_view allowed) {
    for (size_t i = from; i < to; ++i) {
      if (!IsSpace(text[i]) && allowed.find(text[i]) == std::string_view::npos)
        return false;
    }
    return true;
  };
  if (!all.empty() && only(all.back().second, text.size(), ".")) {
    run.push_back(all.back());
    for (size_t i = all.size() - 1; i > 0; --i) {
      if (!only(all[i - 1].second, all[i].first, ",")) break;
      run.push_back(all[i - 1]);
    }
    std::reverse(run.begin(), run.end());
  }

  Regrouping out;
  if (run.empty()) {
    const size_t marker = text.find(kFailureMarker);
    if (marker == std::string::npos) {
      throw InvalidRegroupingError("reply has no trailing [#...] groups");
    }
    out.failure_reason =
        std::string(Trim(std::string_view(text).substr(marker +
                                                       kFailureMarker.size())));
    out.reason = std::string(Trim(std::string_view(text).substr(0, marker)));
    return out;
  }

  std::set<int> seen;
  for (const auto& [begin, end] : run) {
    const std::string group_text = text.substr(begin, end - begin);
    std::vector<int> group;
    for (auto it = std::sregex_iterator(group_text.begin(), group_text.end(),
                                        number_re);
         it != std::sregex_iterator(); ++it) {
      const int n = std::stoi(it->str());
      if (n < 1 || n > k) {
        throw InvalidRegroupingError(
            fmt::format("mention #{} outside 1..{}", n, k));
      }
      if (!seen.insert(n).second) {
        throw InvalidRegroupingError(
            fmt::format("mention #{} appears in two groups", n));
      }
      group.push_back(n);
    }
    std::sort(group.begin(), group.end());
    out.groups.push_back(std::move(group));
  }
  if (static_cast<int>(seen.size()) != k) {
    throw InvalidRegroupingError(fmt::format(
        "regrouping covers {} of {} mentions", seen.size(), k));
  }
  std::sort(out.groups.begin(), out.groups.end());
  out.reason = std::string(Trim(std::string_view(text).substr(0, run[0].first)));
  return out;
}

}  // namespace corefcs
