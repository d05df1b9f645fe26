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

#include "corefcs/nn/layers.h"

#include <cmath>

#include <fmt/format.h>

#include "corefcs/base/error.h"

namespace corefcs::nn {

void ParameterSet::Add(std::string name, Tensor tensor, ParamGroup group) {
  if (Find(name) != nullptr) {
    throw ConfigError(fmt::format("duplicate parameter name '{}'", name));
  }
  params_.push_back({std::move(name), std::move(tensor), group});
}

const NamedParameter* ParameterSet::Find(const std::string& name) const {
  for (const NamedParameter& p : params_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

void ParameterSet::ZeroGrad() const {
  for (const NamedParameter& p : params_) p.tensor.ZeroGrad();
}

Matrix Initializer::Glorot(Eigen::Index fan_in, Eigen::Index fan_out) {
  const double limit =
      std::sqrt(6.0 / static_cast<double>(std::max<Eigen::Index>(
                          fan_in + fan_out, 1)));
  std::uniform_real_distribution<double> dist(-limit, limit);
  Matrix m(fan_in, fan_out);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng_);
  return m;
}

Matrix Initializer::Normal(Eigen::Index rows, Eigen::Index cols,
                           double stddev) {
  std::normal_distribution<double> dist(0.0, stddev);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng_);
  return m;
}

Linear::Linear(Eigen::Index in_dim, Eigen::Index out_dim, Initializer& init,
               bool with_bias)
    : weight(init.Glorot(in_dim, out_dim), true) {
  if (with_bias) bias = Tensor(Matrix::Zero(1, out_dim), true);
}

Tensor Linear::Forward(const Tensor& x) const {
  Tensor y = MatMul(x, weight);
  if (bias.defined()) y = AddRowBroadcast(y, bias);
  return y;
}

void Linear::Register(ParameterSet& set, const std::string& prefix,
                      ParamGroup group) const {
  set.Add(prefix + ".weight", weight, group);
  if (bias.defined()) set.Add(prefix + ".bias", bias, group);
}

LayerNorm::LayerNorm(Eigen::Index dim)
    : gamma(Matrix::Ones(1, dim), true), beta(Matrix::Zero(1, dim), true) {}

Tensor LayerNorm::Forward(const Tensor& x) const {
  return LayerNormRows(x, gamma, beta);
}

void LayerNorm::Register(ParameterSet& set, const std::string& prefix,
                         ParamGroup group) const {
  set.Add(prefix + ".gamma", gamma, group);
  set.Add(prefix + ".beta", beta, group);
}

Mlp::Mlp(Eigen::Index in_dim, Eigen::Index hidden_dim, Initializer& init)
    : hidden(in_dim, hidden_dim, init), output(hidden_dim, 1, init) {}

Tensor Mlp::Forward(const Tensor& x) const {
  return output.Forward(Tanh(hidden.Forward(x)));
}

void Mlp::Register(ParameterSet& set, const std::string& prefix,
                   ParamGroup group) const {
  hidden.Register(set, prefix + ".hidden", group);
  output.Register(set, prefix + ".output", group);
}

Embedding::Embedding(Eigen::Index count, Eigen::Index dim, Initializer& init)
    : table(init.Normal(count, dim, 1.0 / std::sqrt(static_cast<double>(dim))),
            true) {}

Tensor Embedding::Forward(std::span<const int> ids) const {
  return GatherRows(table, ids);
}

void Embedding::Register(ParameterSet& set, const std::string& prefix,
                         ParamGroup group) const {
  set.Add(prefix + ".table", table, group);
}

MultiHeadAttention::MultiHeadAttention(Eigen::Index dim, int heads,
                                       Initializer& init)
    : q(dim, dim, init),
      k(dim, dim, init),
      v(dim, dim, init),
      o(dim, dim, init),
      heads(heads) {
  if (heads <= 0 || dim % heads != 0) {
    throw ConfigError(fmt::format(
        "attention width {} is not divisible by {} heads", dim, heads));
  }
}

Tensor MultiHeadAttention::Forward(const Tensor& query,
                                   const Tensor& memory) const {
  const Eigen::Index dim = q.in_dim();
  if (query.cols() != dim || memory.cols() != dim) {
    throw ShapeError(fmt::format("attention expects width {}, got {} and {}",
                                 dim, query.cols(), memory.cols()));
  }
  const Eigen::Index head_dim = dim / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(head_dim));
  Tensor qs = q.Forward(query);
  Tensor ks = k.Forward(memory);
  Tensor vs = v.Forward(memory);
  std::vector<Tensor> outputs;
  outputs.reserve(heads);
  for (int h = 0; h < heads; ++h) {
    Tensor qh = SliceCols(qs, h * head_dim, head_dim);
    Tensor kh = SliceCols(ks, h * head_dim, head_dim);
    Tensor vh = SliceCols(vs, h * head_dim, head_dim);
    Tensor weights = SoftmaxRows(Scale(MatMul(qh, Transpose(kh)), scale));
    outputs.push_back(MatMul(weights, vh));
  }
  Tensor merged = heads == 1 ? outputs.front() : ConcatCols(outputs);
  return o.Forward(merged);
}

void MultiHeadAttention::Register(ParameterSet& set, const std::string& prefix,
                                  ParamGroup group) const {
  q.Register(set, prefix + ".q", group);
  k.Register(set, prefix + ".k", group);
  v.Register(set, prefix + ".v", group);
  o.Register(set, prefix + ".o", group);
}

}  // namespace corefcs::nn
