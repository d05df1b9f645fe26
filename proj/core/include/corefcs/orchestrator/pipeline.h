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


// End-to-end prediction: detect, filter and check mentions, cluster, filter
// and check clusters, emit predictions.

#ifndef COREFCS_ORCHESTRATOR_PIPELINE_H_
#define COREFCS_ORCHESTRATOR_PIPELINE_H_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "corefcs/agent/checker.h"
#include "corefcs/agent/client.h"
#include "corefcs/corpus/predictions.h"
#include "corefcs/metrics/metrics.h"
#include "corefcs/orchestrator/config.h"
#include "corefcs/orchestrator/model.h"

namespace corefcs {

struct DocumentResult {
  DocumentPrediction prediction;
  std::vector<Mention> detected;
  // Mentions handed to the clusterer (detected minus removed).
  std::vector<Mention> clustered;
  // Clusterer output before the cluster check, and the final clusters.
  std::vector<Cluster> proposed;
  std::vector<Cluster> clusters;
  std::vector<AgentExchange> exchanges;
  AgentStats stats;
};

class Pipeline {
 public:
  // `client` may be null, which skips the agent stages.
  Pipeline(const CorefModel& model, const PipelineConfig& config,
           LlmClient* client);

  DocumentResult Run(const Document& doc) const;
  // Documents are processed on up to `threads` threads; results are in
  // input order.
  std::vector<DocumentResult> RunAll(std::span<const Document> docs,
                                     int threads = 1) const;

 private:
  const CorefModel& model_;
  PipelineConfig config_;
  LlmClient* client_;
};

// Builds the client named by `backend` ("api", "mock:yes", "mock:no",
// "mock:gold", "mock:replay:PATH"). Gold answers come from `docs`.
std::unique_ptr<LlmClient> MakeLlmClient(const std::string& backend,
                                         const PipelineConfig& config,
                                         const std::vector<Document>& docs);

// Micro-averaged scores of `results` against the gold clusters of `docs`.
CorpusScores ScoreResults(std::span<const Document> docs,
                          std::span<const DocumentResult> results,
                          bool drop_singletons);

}  // namespace corefcs

#endif  // COREFCS_ORCHESTRATOR_PIPELINE_H_
