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


#include "corefcs/agent/checker.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "corefcs/agent/annotate.h"
#include "corefcs/base/error.h"
#include "json.hpp"

namespace corefcs {
namespace {

std::string GroupsText(const std::vector<std::vector<int>>& groups) {
  std::string out;
  for (size_t g = 0; g < groups.size(); ++g) {
    if (g > 0) out += ", ";
    out += '[';
    for (size_t j = 0; j < groups[g].size(); ++j) {
      if (j > 0) out += ',';
      out += fmt::format("#{}", groups[g][j]);
    }
    out += ']';
  }
  return out;
}

}  // namespace

void AgentConfig::Validate() const {
  if (context_sentences < 0) {
    throw ConfigError("agent context_sentences must be >= 0");
  }
  if (max_parallel < 1) throw ConfigError("agent max_parallel must be >= 1");
  if (max_retries < 0) throw ConfigError("agent max_retries must be >= 0");
  if (backoff_ms < 0) throw ConfigError("agent backoff_ms must be >= 0");
  if (malformed_retries < 0) {
    throw ConfigError("agent malformed_retries must be >= 0");
  }
}

std::string ExchangeToJsonLine(const AgentExchange& e) {
  nlohmann::ordered_json j;
  j["kind"] = RequestKindName(e.kind);
  j["doc_id"] = e.doc_id;
  nlohmann::ordered_json targets = nlohmann::ordered_json::array();
  for (const Span& s : e.targets) targets.push_back({s.start, s.end});
  j["targets"] = std::move(targets);
  j["attempt"] = e.attempt;
  j["prompt"] = e.prompt;
  j["raw_reply"] = e.replied ? nlohmann::ordered_json(e.raw_reply)
                             : nlohmann::ordered_json(nullptr);
  j["parsed"] = e.parsed;
  if (!e.error.empty()) j["error"] = e.error;
  return j.dump();
}

void AuditLog::Append(std::span<const AgentExchange> exchanges) {
  std::lock_guard<std::mutex> lock(mutex_);
  records_.insert(records_.end(), exchanges.begin(), exchanges.end());
}

void AuditLog::Write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(fmt::format("cannot write audit log '{}'", path));
  for (const AgentExchange& e : records_) out << ExchangeToJsonLine(e) << '\n';
}

AgentStats& AgentStats::operator+=(const AgentStats& other) {
  mention_checks += other.mention_checks;
  mentions_removed += other.mentions_removed;
  cluster_checks += other.cluster_checks;
  clusters_split += other.clusters_split;
  warnings += other.warnings;
  return *this;
}

CheckerSplitter::CheckerSplitter(LlmClient& client, AgentConfig config)
    : client_(client), config_(config), sleeper_([](int ms) {
        std::this_thread::sleep_for(std::chrono::milliseconds(ms));
      }) {
  config_.Validate();
}

bool CheckerSplitter::Ask(
    const LlmRequest& request,
    const std::function<std::string(const std::string&)>& parse,
    std::string* reply, Outcome* outcome) {
  int transport_failures = 0;
  int malformed = 0;
  for (int attempt = 0;; ++attempt) {
    AgentExchange e;
    e.kind = request.kind;
    e.doc_id = request.doc_id;
    e.targets = request.targets;
    e.attempt = attempt;
    e.prompt = request.prompt;
    try {
      e.raw_reply = client_.Complete(request);
      e.replied = true;
    } catch (const TransportError& err) {
      e.error = err.what();
      outcome->exchanges.push_back(std::move(e));
      if (++transport_failures > config_.max_retries) {
        spdlog::warn("{}: {} request failed after {} attempts: {}",
                     request.doc_id, RequestKindName(request.kind),
                     attempt + 1, err.what());
        outcome->warned = true;
        return false;
      }
      sleeper_(config_.backoff_ms << std::min(transport_failures - 1, 16));
      continue;
    }
    try {
      e.parsed = parse(e.raw_reply);
      *reply = e.raw_reply;
      outcome->exchanges.push_back(std::move(e));
      return true;
    } catch (const VerdictParseError& err) {
      e.error = err.what();
    } catch (const InvalidRegroupingError& err) {
      e.error = err.what();
    }
    const std::string error = e.error;
    outcome->exchanges.push_back(std::move(e));
    if (++malformed > config_.malformed_retries) {
      spdlog::warn("{}: unusable {} reply kept the item unchanged: {}",
                   request.doc_id, RequestKindName(request.kind), error);
      outcome->warned = true;
      return false;
    }
  }
}

void CheckerSplitter::ParallelFor(
    size_t n, const std::function<void(size_t)>& fn) const {
  const size_t workers =
      std::min(n, static_cast<size_t>(config_.max_parallel));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<Mention> CheckerSplitter::CheckMentions(
    const Document& doc, std::span<const Mention> to_check,
    std::vector<AgentExchange>* exchanges, AgentStats* stats) {
  std::vector<Outcome> outcomes(to_check.size());
  std::vector<VerdictValue> verdicts(to_check.size(), VerdictValue::kPending);
  ParallelFor(to_check.size(), [&](size_t i) {
    LlmRequest request;
    request.kind = RequestKind::kMentionCheck;
    request.doc_id = doc.doc_id;
    request.targets = {to_check[i].span()};
    request.prompt = RenderMentionCheckPrompt(AnnotateMentionContext(
        doc, to_check[i], config_.context_sentences));
    std::string reply;
    if (Ask(request,
            [](const std::string& raw) {
              return std::string(VerdictName(ParseVerdict(raw).value));
            },
            &reply, &outcomes[i])) {
      verdicts[i] = ParseVerdict(reply).value;
    }
  });

  std::vector<Mention> survivors;
  for (size_t i = 0; i < to_check.size(); ++i) {
    if (exchanges) {
      exchanges->insert(exchanges->end(), outcomes[i].exchanges.begin(),
                        outcomes[i].exchanges.end());
    }
    if (stats) {
      ++stats->mention_checks;
      stats->warnings += outcomes[i].warned;
      stats->mentions_removed += verdicts[i] == VerdictValue::kNo;
    }
    if (verdicts[i] != VerdictValue::kNo) survivors.push_back(to_check[i]);
  }
  return survivors;
}

std::vector<Cluster> CheckerSplitter::CheckAndSplitClusters(
    const Document& doc, std::span<const Cluster> to_check,
    std::vector<AgentExchange>* exchanges, AgentStats* stats) {
  std::vector<Cluster> out;
  for (auto& replaced : CheckAndSplitEach(doc, to_check, exchanges, stats)) {
    out.insert(out.end(), replaced.begin(), replaced.end());
  }
  return out;
}

std::vector<std::vector<Cluster>> CheckerSplitter::CheckAndSplitEach(
    const Document& doc, std::span<const Cluster> to_check,
    std::vector<AgentExchange>* exchanges, AgentStats* stats) {
  std::vector<Outcome> outcomes(to_check.size());
  std::vector<std::vector<std::vector<int>>> regroupings(to_check.size());
  ParallelFor(to_check.size(), [&](size_t i) {
    const Cluster& cluster = to_check[i];
    const int k = static_cast<int>(cluster.size());
    const ClusterContext context = AnnotateClusterContext(doc, cluster);
    LlmRequest request;
    request.kind = RequestKind::kClusterCheck;
    request.doc_id = doc.doc_id;
    request.targets = cluster.spans();
    request.prompt = RenderClusterPrompt(RequestKind::kClusterCheck, context);
    std::string reply;
    if (!Ask(request,
             [](const std::string& raw) {
               return std::string(VerdictName(ParseVerdict(raw).value));
             },
             &reply, &outcomes[i])) {
      return;
    }
    if (ParseVerdict(reply).value != VerdictValue::kNo) return;

    request.kind = RequestKind::kClusterSplit;
    request.prompt = RenderClusterPrompt(RequestKind::kClusterSplit, context);
    if (!Ask(request,
             [k](const std::string& raw) {
               const Regrouping r = ParseRegrouping(raw, k);
               return r.ok() ? GroupsText(r.groups)
                             : "failed: " + *r.failure_reason;
             },
             &reply, &outcomes[i])) {
      return;
    }
    Regrouping r = ParseRegrouping(reply, k);
    if (r.ok()) regroupings[i] = std::move(r.groups);
  });

  std::vector<std::vector<Cluster>> out(to_check.size());
  for (size_t i = 0; i < to_check.size(); ++i) {
    if (exchanges) {
      exchanges->insert(exchanges->end(), outcomes[i].exchanges.begin(),
                        outcomes[i].exchanges.end());
    }
    const bool split = regroupings[i].size() > 1;
    if (stats) {
      ++stats->cluster_checks;
      stats->warnings += outcomes[i].warned;
      stats->clusters_split += split;
    }
    if (!split) {
      // A valid single-group answer keeps the cluster as it was.
      out[i].push_back(to_check[i]);
      continue;
    }
    for (const auto& group : regroupings[i]) {
      Cluster c;
      for (int number : group) {
        c.mentions.push_back(to_check[i].mentions[number - 1]);
      }
      out[i].push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace corefcs
