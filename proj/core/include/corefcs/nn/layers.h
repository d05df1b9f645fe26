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

#ifndef COREFCS_NN_LAYERS_H_
#define COREFCS_NN_LAYERS_H_

#include <random>
#include <span>
#include <string>
#include <vector>

#include "corefcs/nn/tensor.h"

namespace corefcs::nn {

// Optimizer groups; each gets its own learning rate.
enum class ParamGroup { kEncoder, kHeads };

struct NamedParameter {
  std::string name;
  Tensor tensor;
  ParamGroup group;
};

// Flat registry of trainable tensors. Names are unique and stable; they key
// the checkpoint format.
class ParameterSet {
 public:
  void Add(std::string name, Tensor tensor, ParamGroup group);
  const std::vector<NamedParameter>& params() const { return params_; }
  const NamedParameter* Find(const std::string& name) const;
  void ZeroGrad() const;
  size_t size() const { return params_.size(); }

 private:
  std::vector<NamedParameter> params_;
};

// Deterministic initializer shared by all layers of one model.
class Initializer {
 public:
  explicit Initializer(uint64_t seed) : rng_(seed) {}
  // Glorot-uniform for a fan_in x fan_out matrix.
  Matrix Glorot(Eigen::Index fan_in, Eigen::Index fan_out);
  Matrix Normal(Eigen::Index rows, Eigen::Index cols, double stddev);

 private:
  std::mt19937_64 rng_;
};

// y = x W + b with W in_dim x out_dim.
struct Linear {
  Tensor weight;
  Tensor bias;

  Linear() = default;
  Linear(Eigen::Index in_dim, Eigen::Index out_dim, Initializer& init,
         bool with_bias = true);
  Tensor Forward(const Tensor& x) const;
  Eigen::Index in_dim() const { return weight.rows(); }
  Eigen::Index out_dim() const { return weight.cols(); }
  void Register(ParameterSet& set, const std::string& prefix,
                ParamGroup group) const;
};

// Row-wise layer normalization; affine parameters start at identity.
struct LayerNorm {
  Tensor gamma;
  Tensor beta;

  LayerNorm() = default;
  explicit LayerNorm(Eigen::Index dim);
  Tensor Forward(const Tensor& x) const;
  void Register(ParameterSet& set, const std::string& prefix,
                ParamGroup group) const;
};

// One hidden layer with tanh, scalar output per row.
struct Mlp {
  Linear hidden;
  Linear output;

  Mlp() = default;
  Mlp(Eigen::Index in_dim, Eigen::Index hidden_dim, Initializer& init);
  // Returns n x 1 logits.
  Tensor Forward(const Tensor& x) const;
  void Register(ParameterSet& set, const std::string& prefix,
                ParamGroup group) const;
};

struct Embedding {
  Tensor table;

  Embedding() = default;
  Embedding(Eigen::Index count, Eigen::Index dim, Initializer& init);
  Tensor Forward(std::span<const int> ids) const;
  void Register(ParameterSet& set, const std::string& prefix,
                ParamGroup group) const;
};

// Scaled dot-product multi-head attention with separate query and memory
// inputs: queries are the rows of `query`, keys and values come from rows of
// `memory`.
struct MultiHeadAttention {
  Linear q;
  Linear k;
  Linear v;
  Linear o;
  int heads = 1;

  MultiHeadAttention() = default;
  MultiHeadAttention(Eigen::Index dim, int heads, Initializer& init);
  Tensor Forward(const Tensor& query, const Tensor& memory) const;
  void Register(ParameterSet& set, const std::string& prefix,
                ParamGroup group) const;
};

}  // namespace corefcs::nn

#endif  // COREFCS_NN_LAYERS_H_
