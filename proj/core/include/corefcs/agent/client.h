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


// LLM endpoints. Implementations must be safe to call from several threads.

#ifndef COREFCS_AGENT_CLIENT_H_
#define COREFCS_AGENT_CLIENT_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corefcs/agent/prompts.h"
#include "corefcs/corpus/document.h"

namespace corefcs {

struct LlmRequest {
  RequestKind kind = RequestKind::kMentionCheck;
  std::string prompt;
  std::string doc_id;
  // The checked mention, or the cluster's mentions in numbered order.
  std::vector<Span> targets;
};

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  // Returns the raw reply text. Throws TransportError on endpoint failure.
  virtual std::string Complete(const LlmRequest& request) = 0;
};

struct LlmClientConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key_env = "COREFCS_LLM_API_KEY";
  std::string model_name = "gpt-4";
  double temperature = 0.0;
  double timeout_seconds = 60.0;

  void Validate() const;
  bool operator==(const LlmClientConfig&) const = default;
};

// OpenAI-style chat-completions endpoint: POST {base_url}/chat/completions
// with a bearer token read from the environment variable api_key_env.
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(LlmClientConfig config);
  std::string Complete(const LlmRequest& request) override;

  // Exposed for tests: the JSON body sent for `prompt`.
  std::string RequestBody(std::string_view prompt) const;
  // Extracts choices[0].message.content. Throws TransportError.
  static std::string ExtractContent(std::string_view response_body);

 private:
  LlmClientConfig config_;
  std::string scheme_host_;
  std::string path_prefix_;
  std::string api_key_;
};

enum class MockMode { kAllYes, kAllNo, kGoldBacked, kScripted };

MockMode ParseMockMode(std::string_view name);
std::string_view MockModeName(MockMode mode);

// Offline stand-in that answers in the formats the templates ask for.
class MockLlmClient : public LlmClient {
 public:
  struct ScriptEntry {
    // When set, the entry answers only this exact prompt.
    std::optional<std::string> prompt;
    std::string reply;
  };

  // kAllYes / kAllNo.
  explicit MockLlmClient(MockMode mode);
  // kGoldBacked: answers from the gold clusters of `docs`, keyed by doc_id.
  static std::unique_ptr<MockLlmClient> GoldBacked(
      const std::vector<Document>& docs);
  // kScripted: prompt-keyed entries are matched first (in order per
  // prompt); the rest are served first-in first-out. Throws Error when
  // nothing is left for a request.
  static std::unique_ptr<MockLlmClient> Scripted(
      std::vector<ScriptEntry> script);
  // Scripted replay of every exchange in an audit log.
  static std::unique_ptr<MockLlmClient> FromAuditLog(const std::string& path);

  std::string Complete(const LlmRequest& request) override;
  MockMode mode() const { return mode_; }

 private:
  std::string GoldReply(const LlmRequest& request) const;

  MockMode mode_;
  // doc_id -> span -> gold cluster index.
  std::map<std::string, std::map<Span, int>> gold_;
  std::mutex mutex_;
  std::map<std::string, std::vector<std::string>> keyed_;
  std::vector<std::string> fifo_;
  size_t fifo_next_ = 0;
};

}  // namespace corefcs

#endif  // COREFCS_AGENT_CLIENT_H_
