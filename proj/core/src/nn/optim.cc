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

#include "corefcs/nn/optim.h"

#include <algorithm>
#include <cmath>

namespace corefcs::nn {

Adafactor::Adafactor(const ParameterSet& params, Options options)
    : params_(params), options_(options) {
  state_.resize(params_.size());
  for (size_t i = 0; i < params_.size(); ++i) {
    const Tensor& t = params_.params()[i].tensor;
    State& s = state_[i];
    s.factored = t.rows() > 1 && t.cols() > 1;
    if (s.factored) {
      s.row = Eigen::VectorXd::Zero(t.rows());
      s.col = Eigen::RowVectorXd::Zero(t.cols());
    } else {
      s.full = Matrix::Zero(t.rows(), t.cols());
    }
  }
}

void Adafactor::Step(double lr_multiplier) {
  ++step_;
  const double beta2 =
      1.0 - std::pow(static_cast<double>(step_), options_.decay_rate);
  for (size_t i = 0; i < params_.size(); ++i) {
    const NamedParameter& p = params_.params()[i];
    if (!p.tensor.has_grad()) continue;
    const Matrix g = p.tensor.grad();
    const Matrix g2 = g.array().square() + options_.eps;
    State& s = state_[i];
    Matrix update;
    if (s.factored) {
      s.row = beta2 * s.row + (1.0 - beta2) * g2.rowwise().mean();
      s.col = beta2 * s.col + (1.0 - beta2) * g2.colwise().mean();
      const double row_mean = s.row.mean();
      const Eigen::ArrayXd r = (s.row.array() / row_mean).rsqrt();
      const Eigen::ArrayXXd c = s.col.array().rsqrt();
      update = (g.array().colwise() * r).rowwise() * c.row(0);
    } else {
      s.full = beta2 * s.full + (1.0 - beta2) * g2;
      update = g.array() * s.full.array().rsqrt();
    }
    const double rms = std::sqrt(update.array().square().mean());
    update /= std::max(1.0, rms / options_.clip_threshold);
    const double lr = (p.group == ParamGroup::kEncoder ? options_.lr_encoder
                                                       : options_.lr_heads) *
                      lr_multiplier;
    Tensor target = p.tensor;
    target.mutable_value() -= lr * update;
  }
}

double LinearWarmupFactor(long step, long warmup_steps, long total_steps) {
  if (total_steps <= 0) return 1.0;
  if (warmup_steps > 0 && step < warmup_steps) {
    return static_cast<double>(step + 1) / static_cast<double>(warmup_steps);
  }
  const long remaining = total_steps - step;
  const long span = std::max<long>(total_steps - warmup_steps, 1);
  return std::clamp(static_cast<double>(remaining) / static_cast<double>(span),
                    0.0, 1.0);
}

double ClipGradNorm(const ParameterSet& params, double max_norm) {
  double sq = 0.0;
  for (const NamedParameter& p : params.params()) {
    if (p.tensor.has_grad()) sq += p.tensor.node()->grad.squaredNorm();
  }
  const double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    const double factor = max_norm / norm;
    for (const NamedParameter& p : params.params()) {
      if (p.tensor.has_grad()) p.tensor.node()->grad *= factor;
    }
  }
  return norm;
}

}  // namespace corefcs::nn
