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


#include "corefcs/agent/client.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include <fmt/format.h>

#include "corefcs/base/error.h"
#include "httplib.h"
#include "json.hpp"

namespace corefcs {

void LlmClientConfig::Validate() const {
  if (temperature != 0.0) {
    throw ConfigError(fmt::format(
        "llm temperature must be 0 for reproducible review, got {}",
        temperature));
  }
  if (timeout_seconds <= 0) throw ConfigError("llm timeout must be positive");
}

HttpLlmClient::HttpLlmClient(LlmClientConfig config)
    : config_(std::move(config)) {
  config_.Validate();
  const std::string& url = config_.base_url;
  const size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError(fmt::format("llm base_url '{}' has no scheme", url));
  }
  const size_t path_start = url.find('/', scheme_end + 3);
  scheme_host_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') {
    path_prefix_.pop_back();
  }
  if (const char* key = std::getenv(config_.api_key_env.c_str())) {
    api_key_ = key;
  }
}

std::string HttpLlmClient::RequestBody(std::string_view prompt) const {
  nlohmann::ordered_json body;
  body["model"] = config_.model_name;
  body["temperature"] = config_.temperature;
  body["messages"] = nlohmann::ordered_json::array(
      {{{"role", "user"}, {"content", std::string(prompt)}}});
  return body.dump();
}

std::string HttpLlmClient::ExtractContent(std::string_view response_body) {
  try {
    const auto j = nlohmann::json::parse(response_body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(
        fmt::format("unexpected chat-completions response: {}", e.what()));
  }
}

std::string HttpLlmClient::Complete(const LlmRequest& request) {
  if (api_key_.empty()) {
    throw TransportError(fmt::format("environment variable {} is not set",
                                     config_.api_key_env));
  }
  httplib::Client client(scheme_host_);
  const auto seconds = static_cast<time_t>(config_.timeout_seconds);
  client.set_connection_timeout(seconds);
  client.set_read_timeout(seconds);
  client.set_write_timeout(seconds);
  const httplib::Headers headers = {
      {"Authorization", "Bearer " + api_key_}};
  auto result = client.Post(path_prefix_ + "/chat/completions", headers,
                            RequestBody(request.prompt), "application/json");
  if (!result) {
    throw TransportError(fmt::format("request to {} failed: {}", scheme_host_,
                                     httplib::to_string(result.error())));
  }
  if (result->status != 200) {
    throw TransportError(fmt::format("endpoint returned HTTP {}: {}",
                                     result->status,
                                     result->body.substr(0, 200)));
  }
  return ExtractContent(result->body);
}

MockMode ParseMockMode(std::string_view name) {
  if (name == "all_yes" || name == "yes") return MockMode::kAllYes;
  if (name == "all_no" || name == "no") return MockMode::kAllNo;
  if (name == "gold_backed" || name == "gold") return MockMode::kGoldBacked;
  if (name == "scripted") return MockMode::kScripted;
  throw ConfigError(fmt::format("unknown mock mode '{}'", name));
}

std::string_view MockModeName(MockMode mode) {
  switch (mode) {
    case MockMode::kAllYes:
      return "all_yes";
    case MockMode::kAllNo:
      return "all_no";
    case MockMode::kGoldBacked:
      return "gold_backed";
    case MockMode::kScripted:
      return "scripted";
  }
  return "all_yes";
}

MockLlmClient::MockLlmClient(MockMode mode) : mode_(mode) {}

std::unique_ptr<MockLlmClient> MockLlmClient::GoldBacked(
    const std::vector<Document>& docs) {
  auto client = std::make_unique<MockLlmClient>(MockMode::kGoldBacked);
  for (const Document& d : docs) {
    auto& index = client->gold_[d.doc_id];
    for (size_t c = 0; c < d.gold_clusters.size(); ++c) {
      for (const Mention& m : d.gold_clusters[c].mentions) {
        index[m.span()] = static_cast<int>(c);
      }
    }
  }
  return client;
}

std::unique_ptr<MockLlmClient> MockLlmClient::Scripted(
    std::vector<ScriptEntry> script) {
  auto client = std::make_unique<MockLlmClient>(MockMode::kScripted);
  for (ScriptEntry& e : script) {
    if (e.prompt) {
      client->keyed_[*e.prompt].push_back(std::move(e.reply));
    } else {
      client->fifo_.push_back(std::move(e.reply));
    }
  }
  // Keyed replies are consumed from the back.
  for (auto& [prompt, replies] : client->keyed_) {
    std::reverse(replies.begin(), replies.end());
  }
  return client;
}

std::unique_ptr<MockLlmClient> MockLlmClient::FromAuditLog(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open audit log '{}'", path));
  std::vector<ScriptEntry> script;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.contains("raw_reply") || j["raw_reply"].is_null()) continue;
      script.push_back({j.at("prompt").get<std::string>(),
                        j.at("raw_reply").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(fmt::format("{}:{}: {}", path, line_no, e.what()));
    }
  }
  return Scripted(std::move(script));
}

std::string MockLlmClient::Complete(const LlmRequest& request) {
  switch (mode_) {
    case MockMode::kAllYes:
      if (request.kind == RequestKind::kClusterSplit) {
        return "Correction failed: the mock oracle accepts every cluster";
      }
      return "Consistent with context. Yes";
    case MockMode::kAllNo:
      if (request.kind == RequestKind::kClusterSplit) {
        return "Correction failed: the mock oracle does not regroup";
      }
      return "Rejected by the mock oracle. No";
    case MockMode::kGoldBacked:
      return GoldReply(request);
    case MockMode::kScripted:
      break;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = keyed_.find(request.prompt);
  if (it != keyed_.end() && !it->second.empty()) {
    std::string reply = std::move(it->second.back());
    it->second.pop_back();
    return reply;
  }
  if (fifo_next_ < fifo_.size()) return fifo_[fifo_next_++];
  throw Error(fmt::format("mock script exhausted at a {} request for {}",
                          RequestKindName(request.kind), request.doc_id));
}

std::string MockLlmClient::GoldReply(const LlmRequest& request) const {
  static const std::map<Span, int> kEmpty;
  auto doc = gold_.find(request.doc_id);
  const std::map<Span, int>& gold = doc == gold_.end() ? kEmpty : doc->second;
  // Entity id per target; mentions outside the gold annotation are each
  // their own entity.
  std::vector<int> entity;
  int next_unknown = -1;
  for (const Span& s : request.targets) {
    auto it = gold.find(s);
    entity.push_back(it == gold.end() ? next_unknown-- : it->second);
  }
  switch (request.kind) {
    case RequestKind::kMentionCheck:
      if (!entity.empty() && entity[0] >= 0) {
        return "The span matches an annotated mention. Yes";
      }
      return "The span is not an annotated mention. No";
    case RequestKind::kClusterCheck: {
      const bool pure =
          std::all_of(entity.begin(), entity.end(),
                      [&](int e) { return e >= 0 && e == entity[0]; });
      if (pure) return "All mentions refer to the same annotated entity. Yes";
      return "The mentions refer to different annotated entities. No";
    }
    case RequestKind::kClusterSplit: {
      if (entity.empty()) {
        return "Correction failed: the cluster has no mentions";
      }
      // Groups in order of first appearance.
      std::vector<int> order;
      std::map<int, std::vector<int>> groups;
      for (size_t i = 0; i < entity.size(); ++i) {
        if (!groups.count(entity[i])) order.push_back(entity[i]);
        groups[entity[i]].push_back(static_cast<int>(i) + 1);
      }
      std::string out = "Mentions are grouped by annotated entity. ";
      for (size_t g = 0; g < order.size(); ++g) {
        if (g > 0) out += ", ";
        out += '[';
        const auto& numbers = groups[order[g]];
        for (size_t j = 0; j < numbers.size(); ++j) {
          if (j > 0) out += ',';
          out += fmt::format("#{}", numbers[j]);
        }
        out += ']';
      }
      return out;
    }
  }
  return "Pending";
}

}  // namespace corefcs
