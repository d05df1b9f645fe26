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


#include "corefcs/orchestrator/ablation.h"

#include <memory>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "corefcs/base/error.h"
#include "corefcs/detector/detector.h"
#include "corefcs/orchestrator/model.h"
#include "corefcs/orchestrator/pipeline.h"
#include "corefcs/orchestrator/trainer.h"

namespace corefcs {

Sweep ParseSweep(std::string_view name) {
  if (name == "eta") return Sweep::kEta;
  if (name == "lmax") return Sweep::kLmax;
  if (name == "rho") return Sweep::kRho;
  if (name == "bridging") return Sweep::kBridging;
  throw ConfigError(fmt::format("unknown sweep '{}'", name));
}

std::string_view SweepName(Sweep sweep) {
  switch (sweep) {
    case Sweep::kEta:
      return "eta";
    case Sweep::kLmax:
      return "lmax";
    case Sweep::kRho:
      return "rho";
    case Sweep::kBridging:
      return "bridging";
  }
  return "?";
}

bool SweepRetrains(Sweep sweep) {
  return sweep == Sweep::kLmax || sweep == Sweep::kBridging;
}

std::vector<AblationSetting> SweepSettings(Sweep sweep,
                                           const PipelineConfig& base) {
  std::vector<AblationSetting> out;
  switch (sweep) {
    case Sweep::kEta:
      for (double eta : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
        PipelineConfig c = base;
        c.filters.eta1 = eta;
        c.filters.eta2 = eta;
        out.push_back({fmt::format("eta={:.1f}", eta), std::move(c)});
      }
      break;
    case Sweep::kRho:
      for (double rho : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
        PipelineConfig c = base;
        c.filters.rho = rho;
        out.push_back({fmt::format("rho={:g}", rho), std::move(c)});
      }
      break;
    case Sweep::kLmax:
      for (int l_max : {1, 3, 10, 30, kUnboundedSpanLength}) {
        PipelineConfig c = base;
        c.hymr.l_max = l_max;
        out.push_back({l_max == kUnboundedSpanLength
                           ? std::string("l_max=inf")
                           : fmt::format("l_max={}", l_max),
                       std::move(c)});
      }
      break;
    case Sweep::kBridging:
      for (Bridging b : {Bridging::kNone, Bridging::kLbmFc, Bridging::kLbmMha}) {
        PipelineConfig c = base;
        c.encoder.bridging = b;
        if (b != Bridging::kNone) {
          c.encoder.strategy = SegmentStrategy::kIndependent;
        }
        out.push_back(
            {fmt::format("bridging={}", BridgingName(b)), std::move(c)});
      }
      break;
  }
  for (const AblationSetting& s : out) s.config.Validate();
  return out;
}

std::vector<AblationRow> RunAblation(Sweep sweep, const PipelineConfig& base,
                                     const AblationData& data,
                                     const AblationOptions& options) {
  if (data.eval.empty()) throw ConfigError("no evaluation documents");
  const bool retrain = SweepRetrains(sweep);
  if (retrain && base.model.kind != "neural") {
    throw ConfigError(fmt::format("sweep '{}' retrains and needs a neural "
                                  "model, not '{}'",
                                  SweepName(sweep), base.model.kind));
  }
  if (retrain && data.train.empty()) {
    throw ConfigError(
        fmt::format("sweep '{}' needs training documents", SweepName(sweep)));
  }

  std::unique_ptr<CorefModel> shared;
  if (!retrain) shared = LoadModel(base);

  std::vector<AblationRow> rows;
  for (const AblationSetting& setting : SweepSettings(sweep, base)) {
    std::unique_ptr<CorefModel> trained;
    if (retrain) {
      spdlog::info("training for {}", setting.label);
      auto model = std::make_unique<NeuralCorefModel>(
          setting.config, Vocabulary::Build(data.train));
      RunTrain(*model, data.train, data.val);
      trained = std::move(model);
    }
    const CorefModel& model = retrain ? *trained : *shared;
    std::unique_ptr<LlmClient> client;
    if (!options.no_agent) {
      client = MakeLlmClient(setting.config.llm.backend, setting.config,
                             data.eval);
    }
    const Pipeline pipeline(model, setting.config, client.get());
    const std::vector<DocumentResult> results =
        pipeline.RunAll(data.eval, options.threads);
    AblationRow row;
    row.label = setting.label;
    row.scores = ScoreResults(data.eval, results,
                              setting.config.train.drop_singletons);
    for (const DocumentResult& r : results) row.stats += r.stats;
    if (options.on_row) options.on_row(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatAblationTable(Sweep sweep,
                                const std::vector<AblationRow>& rows) {
  std::string out = fmt::format(
      "{:<18}{:>8}{:>8}{:>10}{:>10}{:>9}{:>9}{:>9}\n",
      fmt::format("sweep:{}", SweepName(sweep)), "MUC", "B3", "CEAFphi4",
      "Avg.F1", "Ment.F1", "m.chk", "c.chk");
  for (const AblationRow& r : rows) {
    out += fmt::format("{:<18}{:>8.2f}{:>8.2f}{:>10.2f}{:>10.2f}{:>9.2f}{:>9}{:>9}\n",
                       r.label, 100 * r.scores.muc.f1,
                       100 * r.scores.b_cubed.f1, 100 * r.scores.ceaf.f1,
                       100 * r.scores.avg_f1, 100 * r.scores.mention.f1,
                       r.stats.mention_checks, r.stats.cluster_checks);
  }
  return out;
}

}  // namespace corefcs
