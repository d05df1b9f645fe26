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

#ifndef COREFCS_NN_OPTIM_H_
#define COREFCS_NN_OPTIM_H_

#include <vector>

#include "corefcs/nn/layers.h"

namespace corefcs::nn {

// Adafactor without first moments. Matrices keep factored row/column
// second-moment estimates; vectors keep a full estimate. Updates are
// RMS-clipped at `clip_threshold`. Learning rates are explicit per group.
class Adafactor {
 public:
  struct Options {
    double lr_encoder = 2e-5;
    double lr_heads = 3e-4;
    double decay_rate = -0.8;
    double eps = 1e-30;
    double clip_threshold = 1.0;
  };

  Adafactor(const ParameterSet& params, Options options);

  // Applies one update using the accumulated gradients scaled by
  // `lr_multiplier` (the schedule factor). Does not clear gradients.
  void Step(double lr_multiplier = 1.0);
  long step_count() const { return step_; }

 private:
  struct State {
    Eigen::VectorXd row;  // factored: per-row mean of g^2
    Eigen::RowVectorXd col;
    Matrix full;  // unfactored
    bool factored = false;
  };

  const ParameterSet& params_;
  Options options_;
  std::vector<State> state_;
  long step_ = 0;
};

// Linear warmup to 1 over `warmup_steps`, then linear decay to 0 at
// `total_steps`.
double LinearWarmupFactor(long step, long warmup_steps, long total_steps);

// Scales gradients so their global L2 norm is at most max_norm. Returns the
// norm before clipping.
double ClipGradNorm(const ParameterSet& params, double max_norm);

}  // namespace corefcs::nn

#endif  // COREFCS_NN_OPTIM_H_
