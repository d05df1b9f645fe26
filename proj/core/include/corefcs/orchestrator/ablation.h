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


// Configuration sweeps over the filter fractions, the filter penalty, the
// span-length cap and the bridging module.

#ifndef COREFCS_ORCHESTRATOR_ABLATION_H_
#define COREFCS_ORCHESTRATOR_ABLATION_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "corefcs/agent/checker.h"
#include "corefcs/corpus/document.h"
#include "corefcs/metrics/metrics.h"
#include "corefcs/orchestrator/config.h"

namespace corefcs {

enum class Sweep { kEta, kLmax, kRho, kBridging };

Sweep ParseSweep(std::string_view name);
std::string_view SweepName(Sweep sweep);

// Sweeps over span length and bridging change the trained model and retrain
// it per setting; the filter sweeps reuse one model.
bool SweepRetrains(Sweep sweep);

struct AblationSetting {
  std::string label;
  PipelineConfig config;
};

// The settings of `sweep` applied on top of `base`.
std::vector<AblationSetting> SweepSettings(Sweep sweep,
                                           const PipelineConfig& base);

struct AblationRow {
  std::string label;
  CorpusScores scores;
  AgentStats stats;
};

struct AblationData {
  std::vector<Document> train;
  std::vector<Document> val;
  std::vector<Document> eval;
};

struct AblationOptions {
  // Skip the agent stages, as in `predict --no-agent`.
  bool no_agent = false;
  int threads = 1;
  std::function<void(const AblationRow&)> on_row;
};

// Evaluates every setting of the sweep on data.eval. Retraining sweeps
// require a neural model kind and training documents.
std::vector<AblationRow> RunAblation(Sweep sweep, const PipelineConfig& base,
                                     const AblationData& data,
                                     const AblationOptions& options = {});

// Fixed-width table with one row per setting.
std::string FormatAblationTable(Sweep sweep,
                                const std::vector<AblationRow>& rows);

}  // namespace corefcs

#endif  // COREFCS_ORCHESTRATOR_ABLATION_H_
