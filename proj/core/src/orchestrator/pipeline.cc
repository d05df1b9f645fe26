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


#include "corefcs/orchestrator/pipeline.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include <fmt/format.h>

#include "corefcs/base/error.h"
#include "corefcs/selectors/selectors.h"

namespace corefcs {

Pipeline::Pipeline(const CorefModel& model, const PipelineConfig& config,
                   LlmClient* client)
    : model_(model), config_(config), client_(client) {}

DocumentResult Pipeline::Run(const Document& doc) const {
  DocumentResult r;
  r.detected = model_.Detect(doc);

  if (client_ == nullptr) {
    r.clustered = r.detected;
  } else {
    CheckerSplitter agent(*client_, config_.agent);
    const Selection<Mention> sel =
        SelectMentionsForCheck(r.detected, config_.filters);
    const std::vector<Mention> survivors =
        agent.CheckMentions(doc, sel.to_check, &r.exchanges, &r.stats);
    r.clustered = sel.bypassed;
    r.clustered.insert(r.clustered.end(), survivors.begin(), survivors.end());
    std::sort(r.clustered.begin(), r.clustered.end(),
              [](const Mention& a, const Mention& b) {
                return a.span() < b.span();
              });
  }

  r.proposed = model_.ClusterMentions(doc, r.clustered);
  r.clusters = r.proposed;

  if (client_ != nullptr) {
    CheckerSplitter agent(*client_, config_.agent);
    const Selection<Cluster> sel =
        SelectClustersForCheck(r.proposed, config_.filters);
    const std::vector<std::vector<Cluster>> replaced =
        agent.CheckAndSplitEach(doc, sel.to_check, &r.exchanges, &r.stats);
    std::vector<Cluster> merged;
    size_t next = 0;
    for (size_t i = 0; i < r.proposed.size(); ++i) {
      if (next < sel.checked_indices.size() && sel.checked_indices[next] == i) {
        merged.insert(merged.end(), replaced[next].begin(),
                      replaced[next].end());
        ++next;
      } else {
        merged.push_back(r.proposed[i]);
      }
    }
    r.clusters = std::move(merged);
  }
  r.prediction = ToPrediction(doc.doc_id, r.clusters);
  return r;
}

std::vector<DocumentResult> Pipeline::RunAll(std::span<const Document> docs,
                                             int threads) const {
  std::vector<DocumentResult> out(docs.size());
  const size_t workers =
      std::min(docs.size(), static_cast<size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (size_t i = 0; i < docs.size(); ++i) out[i] = Run(docs[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < docs.size(); i = next++) {
        try {
          out[i] = Run(docs[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::unique_ptr<LlmClient> MakeLlmClient(const std::string& backend,
                                         const PipelineConfig& config,
                                         const std::vector<Document>& docs) {
  if (backend == "api") return std::make_unique<HttpLlmClient>(config.llm.client);
  if (backend == "mock:yes") {
    return std::make_unique<MockLlmClient>(MockMode::kAllYes);
  }
  if (backend == "mock:no") {
    return std::make_unique<MockLlmClient>(MockMode::kAllNo);
  }
  if (backend == "mock:gold") return MockLlmClient::GoldBacked(docs);
  const std::string replay = "mock:replay:";
  if (backend.rfind(replay, 0) == 0) {
    return MockLlmClient::FromAuditLog(
        config.Resolve(backend.substr(replay.size())));
  }
  throw ConfigError(fmt::format("unknown llm backend '{}'", backend));
}

CorpusScores ScoreResults(std::span<const Document> docs,
                          std::span<const DocumentResult> results,
                          bool drop_singletons) {
  if (docs.size() != results.size()) {
    throw ValidationError("documents and results differ in length");
  }
  CorpusEvaluator eval;
  for (size_t i = 0; i < docs.size(); ++i) {
    SpanPartition gold = docs[i].GoldPartition();
    SpanPartition pred = results[i].prediction.clusters;
    if (drop_singletons) {
      gold = DropSingletons(gold);
      pred = DropSingletons(pred);
    }
    eval.Add(gold, pred);
  }
  return eval.Result();
}

}  // namespace corefcs
