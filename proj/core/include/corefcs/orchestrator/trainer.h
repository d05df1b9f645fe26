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


// Joint training of the encoder, detector and clusterer.

#ifndef COREFCS_ORCHESTRATOR_TRAINER_H_
#define COREFCS_ORCHESTRATOR_TRAINER_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "corefcs/metrics/metrics.h"
#include "corefcs/orchestrator/model.h"

namespace corefcs {

struct EpochLog {
  int epoch = 0;  // 1-based
  double loss = 0.0;
  double detection_loss = 0.0;
  double clustering_loss = 0.0;
  std::optional<CorpusScores> validation;
  double seconds = 0.0;
};

struct TrainResult {
  int epochs_run = 0;
  int best_epoch = 0;
  double best_avg_f1 = -1.0;
  bool early_stopped = false;
  std::vector<EpochLog> history;
};

struct TrainOptions {
  // Written whenever validation improves; empty disables checkpointing.
  std::string checkpoint_path;
  std::function<void(const EpochLog&)> on_epoch;
};

// Optimizes the weighted joint loss with Adafactor over two learning-rate
// groups, gradient accumulation over documents, global-norm clipping and a
// linear warmup/decay schedule. Validates every validate_every_epochs
// epochs on `val` (or `train` when `val` is empty) and keeps the weights
// with the best Avg.F1, restoring them at the end. Stops after
// early_stop_patience validations without improvement. Throws
// TrainingDivergedError on a non-finite loss.
TrainResult RunTrain(NeuralCorefModel& model, std::span<const Document> train,
                     std::span<const Document> val,
                     const TrainOptions& options = {});

// Scores the model without the agent stages.
CorpusScores EvaluateModel(const CorefModel& model,
                           std::span<const Document> docs,
                           bool drop_singletons);

}  // namespace corefcs

#endif  // COREFCS_ORCHESTRATOR_TRAINER_H_
