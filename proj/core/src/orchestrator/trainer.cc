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


#include "corefcs/orchestrator/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "corefcs/base/error.h"
#include "corefcs/nn/optim.h"
#include "corefcs/orchestrator/pipeline.h"

namespace corefcs {

CorpusScores EvaluateModel(const CorefModel& model,
                           std::span<const Document> docs,
                           bool drop_singletons) {
  PipelineConfig unused;
  const Pipeline pipeline(model, unused, nullptr);
  const std::vector<DocumentResult> results = pipeline.RunAll(docs);
  return ScoreResults(docs, results, drop_singletons);
}

TrainResult RunTrain(NeuralCorefModel& model, std::span<const Document> train,
                     std::span<const Document> val,
                     const TrainOptions& options) {
  const TrainConfig& tc = model.config().train;
  if (train.empty()) throw ConfigError("training set is empty");
  if (val.empty()) val = train;

  nn::Adafactor::Options opt;
  opt.lr_encoder = tc.lr_encoder;
  opt.lr_heads = tc.lr_heads;
  nn::Adafactor optimizer(model.parameters(), opt);
  const long steps_per_epoch =
      (static_cast<long>(train.size()) + tc.grad_accum - 1) / tc.grad_accum;
  const long total_steps = steps_per_epoch * std::max(tc.max_epochs, 1);
  const long warmup_steps =
      std::lround(tc.warmup_frac * static_cast<double>(total_steps));

  std::mt19937_64 rng(model.config().seed);
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);

  TrainResult result;
  std::vector<nn::Matrix> best = model.Snapshot();
  int validations_since_best = 0;
  long step = 0;
  model.parameters().ZeroGrad();

  for (int epoch = 1; epoch <= tc.max_epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    std::shuffle(order.begin(), order.end(), rng);
    EpochLog log;
    log.epoch = epoch;
    int pending = 0;
    auto apply = [&] {
      nn::ClipGradNorm(model.parameters(), tc.clip_norm);
      optimizer.Step(nn::LinearWarmupFactor(step, warmup_steps, total_steps));
      model.parameters().ZeroGrad();
      ++step;
      pending = 0;
    };
    for (size_t idx : order) {
      const NeuralCorefModel::Losses losses = model.Loss(train[idx]);
      const double value = losses.total.item();
      if (!std::isfinite(value)) {
        throw TrainingDivergedError(fmt::format(
            "non-finite loss at epoch {} on document '{}' (detection {}, "
            "clustering {})",
            epoch, train[idx].doc_id, losses.detection, losses.clustering));
      }
      nn::Scale(losses.total, 1.0 / tc.grad_accum).Backward();
      log.loss += value;
      log.detection_loss += losses.detection;
      log.clustering_loss += losses.clustering;
      if (++pending == tc.grad_accum) apply();
    }
    if (pending > 0) apply();
    const double n = static_cast<double>(train.size());
    log.loss /= n;
    log.detection_loss /= n;
    log.clustering_loss /= n;

    result.epochs_run = epoch;
    bool stop = false;
    if (epoch % tc.validate_every_epochs == 0 || epoch == tc.max_epochs) {
      log.validation = EvaluateModel(model, val, tc.drop_singletons);
      if (log.validation->avg_f1 > result.best_avg_f1) {
        result.best_avg_f1 = log.validation->avg_f1;
        result.best_epoch = epoch;
        best = model.Snapshot();
        validations_since_best = 0;
        if (!options.checkpoint_path.empty()) {
          model.Save(options.checkpoint_path);
        }
      } else if (++validations_since_best > tc.early_stop_patience) {
        result.early_stopped = true;
        stop = true;
      }
    }
    log.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (options.on_epoch) options.on_epoch(log);
    result.history.push_back(std::move(log));
    if (stop) break;
  }
  model.Restore(best);
  return result;
}

}  // namespace corefcs
