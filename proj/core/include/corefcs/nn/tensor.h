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

// Minimal reverse-mode automatic differentiation over dense double matrices.
//
// A Tensor is a shared handle to a graph node holding a value matrix, an
// optional gradient, and a closure that pushes the node's gradient into its
// parents. Operations build the graph eagerly; Backward() on a 1x1 result
// walks it in reverse topological order. Leaf tensors created with
// requires_grad accumulate gradients across Backward() calls until ZeroGrad().
//
// While a NoGradGuard is alive on the current thread, operations record no
// parents, so inference does not retain the graph.

#ifndef COREFCS_NN_TENSOR_H_
#define COREFCS_NN_TENSOR_H_

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace corefcs::nn {

using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;

struct Node {
  Matrix value;
  Matrix grad;
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;

  // Adds g into grad, allocating on first use.
  void Accumulate(const Matrix& g);
};

class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Matrix value, bool requires_grad = false);

  static Tensor Zeros(Eigen::Index rows, Eigen::Index cols,
                      bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const Matrix& value() const { return node_->value; }
  Matrix& mutable_value() { return node_->value; }
  // Gradient; a zero matrix of the value's shape if nothing accumulated.
  Matrix grad() const;
  bool has_grad() const { return node_->grad.size() > 0; }
  bool requires_grad() const { return node_->requires_grad; }
  Eigen::Index rows() const { return node_->value.rows(); }
  Eigen::Index cols() const { return node_->value.cols(); }
  double item() const;

  void Backward() const;
  void ZeroGrad() const;

  const std::shared_ptr<Node>& node() const { return node_; }

 private:
  friend Tensor MakeResult(Matrix value, std::vector<Tensor> parents,
                           std::function<void(Node&)> backward);
  std::shared_ptr<Node> node_;
};

// Disables graph recording on the current thread for its lifetime.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool GradEnabled();

// Creates an op result. The backward closure receives the result node and
// must read `self.grad` and accumulate into `self.parents[i]`.
Tensor MakeResult(Matrix value, std::vector<Tensor> parents,
                  std::function<void(Node&)> backward);

// Elementwise / linear algebra.
Tensor MatMul(const Tensor& a, const Tensor& b);
Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
Tensor Scale(const Tensor& a, double s);
Tensor AddScalar(const Tensor& a, double s);
// a is n x c, row is 1 x c.
Tensor AddRowBroadcast(const Tensor& a, const Tensor& row);
// Repeats a 1 x c row n times.
Tensor BroadcastRows(const Tensor& row, Eigen::Index n);
Tensor Transpose(const Tensor& a);

// Nonlinearities.
Tensor Sigmoid(const Tensor& a);
Tensor Tanh(const Tensor& a);
Tensor Gelu(const Tensor& a);
Tensor SoftmaxRows(const Tensor& a);
// Row-wise layer normalization with affine gamma/beta (each 1 x c).
Tensor LayerNormRows(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                     double eps = 1e-5);

// Shape manipulation.
Tensor ConcatCols(std::span<const Tensor> parts);
Tensor ConcatRows(std::span<const Tensor> parts);
Tensor SliceRows(const Tensor& a, Eigen::Index start, Eigen::Index count);
Tensor SliceCols(const Tensor& a, Eigen::Index start, Eigen::Index count);
Tensor GatherRows(const Tensor& a, std::span<const int> rows);

// Reductions.
Tensor Sum(const Tensor& a);
Tensor Mean(const Tensor& a);
// Column means, 1 x c.
Tensor MeanRows(const Tensor& a);
// Weighted sum of all entries: sum(a .* weights); weights is a constant.
Tensor WeightedSum(const Tensor& a, const Matrix& weights);

// Sum over entries of binary cross-entropy between sigmoid(logits) and
// constant targets in [0,1]. Numerically stable in the logit domain.
Tensor BceWithLogitsSum(const Tensor& logits, const Matrix& targets);

// Per-row bilinear form. xs, xe are k x d; u is d x (r * d) holding the
// d x r x d tensor with u(p, j * d + q) = U[p, j, q]. Returns k x r with
// out(i, j) = sum_{p,q} xs(i,p) U[p,j,q] xe(i,q).
Tensor RowBilinear(const Tensor& xs, const Tensor& u, const Tensor& xe,
                   Eigen::Index r);
// RowBilinear where row i of xe pairs with row group[i] of xs, so a row of
// xs shared by many pairs is contracted with u only once. xs is s x d, xe is
// k x d and group has k entries in [0, s).
Tensor GroupedBilinear(const Tensor& xs, const Tensor& u, const Tensor& xe,
                       std::span<const int> group, Eigen::Index r);

}  // namespace corefcs::nn

#endif  // COREFCS_NN_TENSOR_H_
