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


// corefcs command-line interface: train, predict, evaluate and ablate.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "corefcs/agent/checker.h"
#include "corefcs/base/error.h"
#include "corefcs/corpus/conll.h"
#include "corefcs/corpus/predictions.h"
#include "corefcs/metrics/metrics.h"
#include "corefcs/orchestrator/ablation.h"
#include "corefcs/orchestrator/config.h"
#include "corefcs/orchestrator/model.h"
#include "corefcs/orchestrator/pipeline.h"
#include "corefcs/orchestrator/trainer.h"

namespace corefcs {
namespace {

std::vector<Document> ReadDocs(const PipelineConfig& config,
                               const std::string& path,
                               std::string_view role) {
  if (path.empty()) return {};
  std::vector<Document> docs = ParseConll(config.Resolve(path));
  spdlog::info("{}: {} documents from {}", role, docs.size(), path);
  return docs;
}

struct TrainArgs {
  std::string config;
  std::string checkpoint;
};

int Train(const TrainArgs& args) {
  const PipelineConfig config = LoadConfig(args.config);
  if (config.model.kind != "neural") {
    throw ConfigError("train needs model.kind = \"neural\"");
  }
  const std::vector<Document> train =
      ReadDocs(config, config.data.train, "train");
  const std::vector<Document> val = ReadDocs(config, config.data.val, "val");
  NeuralCorefModel model(config, Vocabulary::Build(train));
  TrainOptions options;
  options.checkpoint_path = config.Resolve(
      args.checkpoint.empty() ? config.model.checkpoint : args.checkpoint);
  options.on_epoch = [](const EpochLog& log) {
    if (log.validation) {
      spdlog::info(
          "epoch {:3d} loss {:.4f} (det {:.4f}, clu {:.4f}) val avg.f1 "
          "{:.4f} mention f1 {:.4f} [{:.2f}s]",
          log.epoch, log.loss, log.detection_loss, log.clustering_loss,
          log.validation->avg_f1, log.validation->mention.f1, log.seconds);
    } else {
      spdlog::info("epoch {:3d} loss {:.4f} (det {:.4f}, clu {:.4f}) [{:.2f}s]",
                   log.epoch, log.loss, log.detection_loss,
                   log.clustering_loss, log.seconds);
    }
  };
  const TrainResult result = RunTrain(model, train, val, options);
  const CorpusScores scores =
      EvaluateModel(model, train, config.train.drop_singletons);
  fmt::print("best epoch {} of {} (validation Avg.F1 {:.4f}){}\n",
             result.best_epoch, result.epochs_run, result.best_avg_f1,
             result.early_stopped ? ", stopped early" : "");
  fmt::print("training split:\n{}", FormatScoreTable(scores));
  fmt::print("{}\n", ScoresToJson(scores));
  fmt::print("checkpoint: {}\n", options.checkpoint_path);
  return 0;
}

struct PredictArgs {
  std::string config;
  std::string input;
  std::string output;
  std::string llm;
  std::string audit;
  bool no_agent = false;
  int threads = 1;
};

int Predict(const PredictArgs& args) {
  PipelineConfig config = LoadConfig(args.config);
  if (!args.llm.empty()) config.llm.backend = args.llm;
  const std::vector<Document> docs = ParseConll(args.input);
  const std::unique_ptr<CorefModel> model = LoadModel(config);
  std::unique_ptr<LlmClient> client;
  if (!args.no_agent) client = MakeLlmClient(config.llm.backend, config, docs);
  const Pipeline pipeline(*model, config, client.get());
  const std::vector<DocumentResult> results =
      pipeline.RunAll(docs, args.threads);

  std::vector<DocumentPrediction> predictions;
  AuditLog audit;
  AgentStats stats;
  for (const DocumentResult& r : results) {
    predictions.push_back(r.prediction);
    audit.Append(r.exchanges);
    stats += r.stats;
  }
  WritePredictions(args.output, predictions);
  spdlog::info("wrote {} predictions to {}", predictions.size(), args.output);
  if (client) {
    const std::string audit_path =
        args.audit.empty() ? args.output + ".audit.jsonl" : args.audit;
    audit.Write(audit_path);
    spdlog::info(
        "agent: {} mention checks ({} removed), {} cluster checks ({} split), "
        "{} warnings; audit log {}",
        stats.mention_checks, stats.mentions_removed, stats.cluster_checks,
        stats.clusters_split, stats.warnings, audit_path);
    if (stats.warnings > 0) {
      spdlog::warn("{} LLM requests failed and kept their items",
                   stats.warnings);
    }
  }
  return 0;
}

struct EvaluateArgs {
  std::string gold;
  std::string pred;
  std::string json;
  bool drop_singletons = false;
};

int Evaluate(const EvaluateArgs& args) {
  const std::vector<Document> gold = ParseConll(args.gold);
  const std::vector<DocumentPrediction> predictions =
      ReadPredictions(args.pred);
  std::map<std::string, int> sizes;
  for (const Document& d : gold) sizes[d.doc_id] = d.size();
  ValidatePredictions(predictions, sizes);
  std::map<std::string, const DocumentPrediction*> by_id;
  for (const DocumentPrediction& p : predictions) {
    if (!by_id.emplace(p.doc_id, &p).second) {
      throw ValidationError(
          fmt::format("duplicate prediction for '{}'", p.doc_id));
    }
  }
  CorpusEvaluator eval;
  for (const Document& d : gold) {
    SpanPartition g = d.GoldPartition();
    SpanPartition p;
    if (auto it = by_id.find(d.doc_id); it != by_id.end()) {
      p = it->second->clusters;
    } else {
      spdlog::warn("no prediction for '{}'; scoring it as empty", d.doc_id);
    }
    if (args.drop_singletons) {
      g = DropSingletons(g);
      p = DropSingletons(p);
    }
    eval.Add(g, p);
  }
  const CorpusScores scores = eval.Result();
  fmt::print("{}", FormatScoreTable(scores));
  const std::string json = ScoresToJson(scores);
  if (args.json.empty()) {
    fmt::print("{}\n", json);
  } else {
    std::ofstream out(args.json, std::ios::binary);
    if (!out) throw ParseError(fmt::format("cannot write '{}'", args.json));
    out << json << '\n';
  }
  return 0;
}

struct AblateArgs {
  std::string config;
  std::string sweep;
  std::string llm;
  std::string input;
  bool no_agent = false;
  int threads = 1;
};

int Ablate(const AblateArgs& args) {
  PipelineConfig config = LoadConfig(args.config);
  if (!args.llm.empty()) config.llm.backend = args.llm;
  const Sweep sweep = ParseSweep(args.sweep);
  AblationData data;
  if (SweepRetrains(sweep)) {
    data.train = ReadDocs(config, config.data.train, "train");
    data.val = ReadDocs(config, config.data.val, "val");
  }
  if (!args.input.empty()) {
    data.eval = ParseConll(args.input);
  } else {
    data.eval = ReadDocs(config,
                         config.data.test.empty() ? config.data.val
                                                  : config.data.test,
                         "eval");
  }
  AblationOptions options;
  options.no_agent = args.no_agent;
  options.threads = args.threads;
  options.on_row = [](const AblationRow& row) {
    spdlog::info("{}: avg.f1 {:.4f}", row.label, row.scores.avg_f1);
  };
  const std::vector<AblationRow> rows =
      RunAblation(sweep, config, data, options);
  fmt::print("{}", FormatAblationTable(sweep, rows));
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"corefcs: coreference resolution with LLM checking"};
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level,
                 "trace, debug, info, warn, error or off")
      ->capture_default_str();

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a model");
  train_cmd->add_option("--config", train.config, "Pipeline config (JSON)")
      ->required();
  train_cmd->add_option("--checkpoint", train.checkpoint,
                        "Checkpoint path (default: model.checkpoint)");

  PredictArgs predict;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Predict clusters for a CoNLL file");
  predict_cmd->add_option("--config", predict.config)->required();
  predict_cmd->add_option("--input", predict.input, "CoNLL input")
      ->required();
  predict_cmd->add_option("--output", predict.output, "JSONL predictions")
      ->required();
  predict_cmd->add_flag("--no-agent", predict.no_agent,
                        "Skip the LLM checking stages");
  predict_cmd->add_option("--llm", predict.llm,
                          "mock:gold, mock:yes, mock:no, mock:replay:PATH "
                          "or api (default: llm.backend)");
  predict_cmd->add_option("--audit", predict.audit,
                          "Audit log path (default: OUTPUT.audit.jsonl)");
  predict_cmd->add_option("--threads", predict.threads)
      ->check(CLI::PositiveNumber);

  EvaluateArgs evaluate;
  CLI::App* evaluate_cmd =
      app.add_subcommand("evaluate", "Score predictions against gold");
  evaluate_cmd->add_option("--gold", evaluate.gold, "Gold CoNLL")
      ->required();
  evaluate_cmd->add_option("--pred", evaluate.pred, "JSONL predictions")
      ->required();
  evaluate_cmd->add_flag("--drop-singletons", evaluate.drop_singletons,
                         "Ignore single-mention clusters on both sides");
  evaluate_cmd->add_option("--json", evaluate.json,
                           "Write the JSON scores here instead of stdout");

  AblateArgs ablate;
  CLI::App* ablate_cmd =
      app.add_subcommand("ablate", "Sweep one setting and score each value");
  ablate_cmd->add_option("--config", ablate.config)->required();
  ablate_cmd->add_option("--sweep", ablate.sweep)
      ->required()
      ->check(CLI::IsMember({"eta", "lmax", "rho", "bridging"}));
  ablate_cmd->add_option("--llm", ablate.llm);
  ablate_cmd->add_option("--input", ablate.input,
                         "Evaluation CoNLL (default: data.test or data.val)");
  ablate_cmd->add_flag("--no-agent", ablate.no_agent);
  ablate_cmd->add_option("--threads", ablate.threads)
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  auto logger = spdlog::stderr_color_mt("corefcs");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    if (*train_cmd) return Train(train);
    if (*predict_cmd) return Predict(predict);
    if (*evaluate_cmd) return Evaluate(evaluate);
    if (*ablate_cmd) return Ablate(ablate);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace corefcs

int main(int argc, char** argv) { return corefcs::Main(argc, argv); }
