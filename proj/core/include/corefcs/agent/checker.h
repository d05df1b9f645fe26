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


// The checker-splitter stage: asks the LLM to validate low-confidence
// mentions and clusters and applies its answers. Every failure mode keeps
// the item unchanged.

#ifndef COREFCS_AGENT_CHECKER_H_
#define COREFCS_AGENT_CHECKER_H_

#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "corefcs/agent/client.h"
#include "corefcs/agent/prompts.h"
#include "corefcs/corpus/document.h"

namespace corefcs {

struct AgentConfig {
  // Sentences of preceding context for mention checks.
  int context_sentences = 2;
  // Concurrent LLM requests.
  int max_parallel = 4;
  // Retries after a transport error; the delay starts at backoff_ms and
  // doubles on every retry.
  int max_retries = 3;
  int backoff_ms = 500;
  // Extra attempts with the same prompt after an unparseable reply.
  int malformed_retries = 1;

  void Validate() const;
  bool operator==(const AgentConfig&) const = default;
};

// One request/reply round trip.
struct AgentExchange {
  RequestKind kind = RequestKind::kMentionCheck;
  std::string doc_id;
  std::vector<Span> targets;
  int attempt = 0;
  std::string prompt;
  // Empty when the transport failed.
  std::string raw_reply;
  bool replied = false;
  // Parsed result rendered as text ("Yes", "[#1,#3], [#2]",
  // "failed: reason"), or the error message.
  std::string parsed;
  std::string error;
};

std::string ExchangeToJsonLine(const AgentExchange& exchange);

// Thread-safe JSONL sink for exchanges.
class AuditLog {
 public:
  void Append(std::span<const AgentExchange> exchanges);
  const std::vector<AgentExchange>& records() const { return records_; }
  void Write(const std::string& path) const;

 private:
  std::mutex mutex_;
  std::vector<AgentExchange> records_;
};

struct AgentStats {
  int mention_checks = 0;
  int mentions_removed = 0;
  int cluster_checks = 0;
  int clusters_split = 0;
  int warnings = 0;

  AgentStats& operator+=(const AgentStats& other);
};

class CheckerSplitter {
 public:
  CheckerSplitter(LlmClient& client, AgentConfig config);

  // Returns the mentions of `to_check` that were not judged invalid, in
  // input order. Exchanges are appended in input order.
  std::vector<Mention> CheckMentions(const Document& doc,
                                     std::span<const Mention> to_check,
                                     std::vector<AgentExchange>* exchanges,
                                     AgentStats* stats);

  // Returns the clusters that replace `to_check`, in input order, with a
  // split cluster replaced in place by its groups. Split clusters carry no
  // pair probabilities.
  std::vector<Cluster> CheckAndSplitClusters(
      const Document& doc, std::span<const Cluster> to_check,
      std::vector<AgentExchange>* exchanges, AgentStats* stats);
  // Same, keeping one replacement list per input cluster.
  std::vector<std::vector<Cluster>> CheckAndSplitEach(
      const Document& doc, std::span<const Cluster> to_check,
      std::vector<AgentExchange>* exchanges, AgentStats* stats);

  // Replaces the sleep used between retries (tests).
  void set_sleeper(std::function<void(int)> sleeper) {
    sleeper_ = std::move(sleeper);
  }

 private:
  struct Outcome {
    std::vector<AgentExchange> exchanges;
    bool warned = false;
  };

  // Sends `request` until `parse` accepts a reply or retries run out.
  // `parse` returns the parsed text and throws on a malformed reply.
  // Returns true with the accepted reply in *reply.
  bool Ask(const LlmRequest& request,
           const std::function<std::string(const std::string&)>& parse,
           std::string* reply, Outcome* outcome);

  // Runs fn(i) for i in [0, n) on up to max_parallel threads.
  void ParallelFor(size_t n, const std::function<void(size_t)>& fn) const;

  LlmClient& client_;
  AgentConfig config_;
  std::function<void(int)> sleeper_;
};

}  // namespace corefcs

#endif  // COREFCS_AGENT_CHECKER_H_
