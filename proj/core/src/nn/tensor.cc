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

#include "corefcs/nn/tensor.h"

#include <cmath>
#include <numeric>
#include <unordered_set>
#include <utility>

#include <fmt/format.h>

#include "corefcs/base/error.h"

namespace corefcs::nn {
namespace {

thread_local bool grad_enabled = true;

void CheckSameShape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(fmt::format("{}: shape mismatch {}x{} vs {}x{}", op,
                                 a.rows(), a.cols(), b.rows(), b.cols()));
  }
}

Node& Parent(Node& self, size_t i) { return *self.parents[i]; }

}  // namespace

void Node::Accumulate(const Matrix& g) {
  if (grad.size() == 0) {
    grad = g;
  } else {
    grad += g;
  }
}

Tensor::Tensor(Matrix value, bool requires_grad)
    : node_(std::make_shared<Node>()) {
  node_->value = std::move(value);
  node_->requires_grad = requires_grad;
}

Tensor Tensor::Zeros(Eigen::Index rows, Eigen::Index cols,
                     bool requires_grad) {
  return Tensor(Matrix::Zero(rows, cols), requires_grad);
}

Matrix Tensor::grad() const {
  if (node_->grad.size() == 0) {
    return Matrix::Zero(rows(), cols());
  }
  return node_->grad;
}

double Tensor::item() const {
  if (rows() != 1 || cols() != 1) {
    throw ShapeError(fmt::format("item() on {}x{} tensor", rows(), cols()));
  }
  return node_->value(0, 0);
}

void Tensor::ZeroGrad() const { node_->grad.resize(0, 0); }

void Tensor::Backward() const {
  if (rows() != 1 || cols() != 1) {
    throw ShapeError("Backward() requires a scalar tensor");
  }
  if (!node_->requires_grad) return;

  // Iterative post-order DFS for the topological order.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, size_t>> stack;
  stack.emplace_back(node_.get(), 0);
  visited.insert(node_.get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node* parent = node->parents[next++].get();
      if (parent->requires_grad && visited.insert(parent).second) {
        stack.emplace_back(parent, 0);
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  node_->Accumulate(Matrix::Ones(1, 1));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* node = *it;
    if (node->backward && node->grad.size() > 0) {
      node->backward(*node);
      // Interior gradients are not needed once propagated.
      if (!node->parents.empty()) node->grad.resize(0, 0);
    }
  }
}

NoGradGuard::NoGradGuard() : previous_(grad_enabled) { grad_enabled = false; }
NoGradGuard::~NoGradGuard() { grad_enabled = previous_; }

bool GradEnabled() { return grad_enabled; }

Tensor MakeResult(Matrix value, std::vector<Tensor> parents,
                  std::function<void(Node&)> backward) {
  Tensor out(std::move(value));
  if (!grad_enabled) return out;
  bool needs = false;
  for (const Tensor& p : parents) needs = needs || p.requires_grad();
  if (!needs) return out;
  out.node_->requires_grad = true;
  out.node_->parents.reserve(parents.size());
  for (Tensor& p : parents) out.node_->parents.push_back(p.node());
  out.node_->backward = std::move(backward);
  return out;
}

Tensor MatMul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError(fmt::format("MatMul: {}x{} * {}x{}", a.rows(), a.cols(),
                                 b.rows(), b.cols()));
  }
  return MakeResult(a.value() * b.value(), {a, b}, [](Node& self) {
    Node& pa = Parent(self, 0);
    Node& pb = Parent(self, 1);
    if (pa.requires_grad) pa.Accumulate(self.grad * pb.value.transpose());
    if (pb.requires_grad) pb.Accumulate(pa.value.transpose() * self.grad);
  });
}

Tensor Add(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "Add");
  return MakeResult(a.value() + b.value(), {a, b}, [](Node& self) {
    for (auto& p : self.parents) {
      if (p->requires_grad) p->Accumulate(self.grad);
    }
  });
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "Sub");
  return MakeResult(a.value() - b.value(), {a, b}, [](Node& self) {
    if (self.parents[0]->requires_grad) self.parents[0]->Accumulate(self.grad);
    if (self.parents[1]->requires_grad) {
      self.parents[1]->Accumulate(-self.grad);
    }
  });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "Mul");
  return MakeResult(
      a.value().cwiseProduct(b.value()), {a, b}, [](Node& self) {
        Node& pa = Parent(self, 0);
        Node& pb = Parent(self, 1);
        if (pa.requires_grad) pa.Accumulate(self.grad.cwiseProduct(pb.value));
        if (pb.requires_grad) pb.Accumulate(self.grad.cwiseProduct(pa.value));
      });
}

Tensor Scale(const Tensor& a, double s) {
  return MakeResult(a.value() * s, {a}, [s](Node& self) {
    Parent(self, 0).Accumulate(self.grad * s);
  });
}

Tensor AddScalar(const Tensor& a, double s) {
  return MakeResult(a.value().array() + s, {a}, [](Node& self) {
    Parent(self, 0).Accumulate(self.grad);
  });
}

Tensor AddRowBroadcast(const Tensor& a, const Tensor& row) {
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw ShapeError(fmt::format("AddRowBroadcast: {}x{} + {}x{}", a.rows(),
                                 a.cols(), row.rows(), row.cols()));
  }
  Matrix out = a.value();
  out.rowwise() += row.value().row(0);
  return MakeResult(std::move(out), {a, row}, [](Node& self) {
    Node& pa = Parent(self, 0);
    Node& pr = Parent(self, 1);
    if (pa.requires_grad) pa.Accumulate(self.grad);
    if (pr.requires_grad) pr.Accumulate(self.grad.colwise().sum());
  });
}

Tensor BroadcastRows(const Tensor& row, Eigen::Index n) {
  if (row.rows() != 1) {
    throw ShapeError("BroadcastRows: input must have one row");
  }
  Matrix out = row.value().replicate(n, 1);
  return MakeResult(std::move(out), {row}, [](Node& self) {
    Parent(self, 0).Accumulate(self.grad.colwise().sum());
  });
}

Tensor Transpose(const Tensor& a) {
  return MakeResult(a.value().transpose(), {a}, [](Node& self) {
    Parent(self, 0).Accumulate(self.grad.transpose());
  });
}

Tensor Sigmoid(const Tensor& a) {
  Matrix out = a.value().unaryExpr([](double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
  });
  return MakeResult(std::move(out), {a}, [](Node& self) {
    const Matrix& y = self.value;
    Parent(self, 0).Accumulate(
        self.grad.cwiseProduct(y.cwiseProduct((1.0 - y.array()).matrix())));
  });
}

Tensor Tanh(const Tensor& a) {
  Matrix out = a.value().array().tanh().matrix();
  return MakeResult(std::move(out), {a}, [](Node& self) {
    const Matrix& y = self.value;
    Parent(self, 0).Accumulate(
        self.grad.cwiseProduct((1.0 - y.array().square()).matrix()));
  });
}

namespace {
constexpr double kGeluC = 0.7978845608028654;  // sqrt(2/pi)
constexpr double kGeluA = 0.044715;
}  // namespace

Tensor Gelu(const Tensor& a) {
  Matrix out = a.value().unaryExpr([](double x) {
    return 0.5 * x * (1.0 + std::tanh(kGeluC * (x + kGeluA * x * x * x)));
  });
  return MakeResult(std::move(out), {a}, [](Node& self) {
    Node& p = Parent(self, 0);
    Matrix d = p.value.unaryExpr([](double x) {
      const double t = std::tanh(kGeluC * (x + kGeluA * x * x * x));
      return 0.5 * (1.0 + t) +
             0.5 * x * (1.0 - t * t) * kGeluC * (1.0 + 3.0 * kGeluA * x * x);
    });
    p.Accumulate(self.grad.cwiseProduct(d));
  });
}

Tensor SoftmaxRows(const Tensor& a) {
  Matrix out = a.value();
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const double mx = out.row(i).maxCoeff();
    out.row(i) = (out.row(i).array() - mx).exp().matrix();
    out.row(i) /= out.row(i).sum();
  }
  return MakeResult(std::move(out), {a}, [](Node& self) {
    const Matrix& y = self.value;
    Matrix dot = self.grad.cwiseProduct(y).rowwise().sum();
    Matrix g = y.cwiseProduct(
        (self.grad.array().colwise() - dot.col(0).array()).matrix());
    Parent(self, 0).Accumulate(g);
  });
}

Tensor LayerNormRows(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                     double eps) {
  const Eigen::Index c = x.cols();
  if (gamma.rows() != 1 || gamma.cols() != c || beta.rows() != 1 ||
      beta.cols() != c) {
    throw ShapeError("LayerNormRows: affine parameters must be 1 x cols");
  }
  Matrix xhat(x.rows(), c);
  Eigen::VectorXd inv_std(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double mu = x.value().row(i).mean();
    const auto centered = x.value().row(i).array() - mu;
    const double var = centered.square().mean();
    inv_std(i) = 1.0 / std::sqrt(var + eps);
    xhat.row(i) = (centered * inv_std(i)).matrix();
  }
  Matrix out = xhat.array().rowwise() * gamma.value().row(0).array();
  out.rowwise() += beta.value().row(0);
  return MakeResult(
      std::move(out), {x, gamma, beta},
      [xhat, inv_std, c](Node& self) {
        Node& px = Parent(self, 0);
        Node& pg = Parent(self, 1);
        Node& pb = Parent(self, 2);
        if (pg.requires_grad) {
          pg.Accumulate(self.grad.cwiseProduct(xhat).colwise().sum());
        }
        if (pb.requires_grad) pb.Accumulate(self.grad.colwise().sum());
        if (px.requires_grad) {
          Matrix dxhat = self.grad.array().rowwise() * pg.value.row(0).array();
          Matrix dx(dxhat.rows(), c);
          for (Eigen::Index i = 0; i < dxhat.rows(); ++i) {
            const double s1 = dxhat.row(i).sum();
            const double s2 = dxhat.row(i).dot(xhat.row(i));
            dx.row(i) = (inv_std(i) / static_cast<double>(c)) *
                        (static_cast<double>(c) * dxhat.row(i).array() - s1 -
                         xhat.row(i).array() * s2)
                            .matrix();
          }
          px.Accumulate(dx);
        }
      });
}

Tensor ConcatCols(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("ConcatCols: no inputs");
  const Eigen::Index rows = parts.front().rows();
  Eigen::Index cols = 0;
  for (const Tensor& p : parts) {
    if (p.rows() != rows) throw ShapeError("ConcatCols: row count mismatch");
    cols += p.cols();
  }
  Matrix out(rows, cols);
  std::vector<Eigen::Index> widths;
  Eigen::Index at = 0;
  for (const Tensor& p : parts) {
    out.middleCols(at, p.cols()) = p.value();
    widths.push_back(p.cols());
    at += p.cols();
  }
  return MakeResult(std::move(out), {parts.begin(), parts.end()},
                    [widths](Node& self) {
                      Eigen::Index offset = 0;
                      for (size_t i = 0; i < widths.size(); ++i) {
                        Node& p = Parent(self, i);
                        if (p.requires_grad) {
                          p.Accumulate(self.grad.middleCols(offset, widths[i]));
                        }
                        offset += widths[i];
                      }
                    });
}

Tensor ConcatRows(std::span<const Tensor> parts) {
  if (parts.empty()) throw ShapeError("ConcatRows: no inputs");
  const Eigen::Index cols = parts.front().cols();
  Eigen::Index rows = 0;
  for (const Tensor& p : parts) {
    if (p.cols() != cols) throw ShapeError("ConcatRows: col count mismatch");
    rows += p.rows();
  }
  Matrix out(rows, cols);
  std::vector<Eigen::Index> heights;
  Eigen::Index at = 0;
  for (const Tensor& p : parts) {
    out.middleRows(at, p.rows()) = p.value();
    heights.push_back(p.rows());
    at += p.rows();
  }
  return MakeResult(std::move(out), {parts.begin(), parts.end()},
                    [heights](Node& self) {
                      Eigen::Index offset = 0;
                      for (size_t i = 0; i < heights.size(); ++i) {
                        Node& p = Parent(self, i);
                        if (p.requires_grad) {
                          p.Accumulate(
                              self.grad.middleRows(offset, heights[i]));
                        }
                        offset += heights[i];
                      }
                    });
}

Tensor SliceRows(const Tensor& a, Eigen::Index start, Eigen::Index count) {
  if (start < 0 || count < 0 || start + count > a.rows()) {
    throw ShapeError(fmt::format("SliceRows: [{}, {}) of {} rows", start,
                                 start + count, a.rows()));
  }
  return MakeResult(a.value().middleRows(start, count), {a},
                    [start, count](Node& self) {
                      Node& p = Parent(self, 0);
                      Matrix g = Matrix::Zero(p.value.rows(), p.value.cols());
                      g.middleRows(start, count) = self.grad;
                      p.Accumulate(g);
                    });
}

Tensor SliceCols(const Tensor& a, Eigen::Index start, Eigen::Index count) {
  if (start < 0 || count < 0 || start + count > a.cols()) {
    throw ShapeError(fmt::format("SliceCols: [{}, {}) of {} cols", start,
                                 start + count, a.cols()));
  }
  return MakeResult(a.value().middleCols(start, count), {a},
                    [start, count](Node& self) {
                      Node& p = Parent(self, 0);
                      Matrix g = Matrix::Zero(p.value.rows(), p.value.cols());
                      g.middleCols(start, count) = self.grad;
                      p.Accumulate(g);
                    });
}

Tensor GatherRows(const Tensor& a, std::span<const int> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= a.rows()) {
      throw ShapeError(fmt::format("GatherRows: index {} of {} rows", rows[i],
                                   a.rows()));
    }
    out.row(static_cast<Eigen::Index>(i)) = a.value().row(rows[i]);
  }
  std::vector<int> index(rows.begin(), rows.end());
  return MakeResult(std::move(out), {a}, [index](Node& self) {
    Node& p = Parent(self, 0);
    Matrix g = Matrix::Zero(p.value.rows(), p.value.cols());
    for (size_t i = 0; i < index.size(); ++i) {
      g.row(index[i]) += self.grad.row(static_cast<Eigen::Index>(i));
    }
    p.Accumulate(g);
  });
}

Tensor Sum(const Tensor& a) {
  Matrix out(1, 1);
  out(0, 0) = a.value().sum();
  return MakeResult(std::move(out), {a}, [](Node& self) {
    Node& p = Parent(self, 0);
    p.Accumulate(Matrix::Constant(p.value.rows(), p.value.cols(),
                                  self.grad(0, 0)));
  });
}

Tensor Mean(const Tensor& a) {
  const double n = static_cast<double>(a.value().size());
  if (n == 0) throw ShapeError("Mean of empty tensor");
  return Scale(Sum(a), 1.0 / n);
}

Tensor MeanRows(const Tensor& a) {
  if (a.rows() == 0) throw ShapeError("MeanRows of empty tensor");
  const double n = static_cast<double>(a.rows());
  return MakeResult(a.value().colwise().mean(), {a}, [n](Node& self) {
    Node& p = Parent(self, 0);
    p.Accumulate(self.grad.replicate(p.value.rows(), 1) / n);
  });
}

Tensor WeightedSum(const Tensor& a, const Matrix& weights) {
  if (weights.rows() != a.rows() || weights.cols() != a.cols()) {
    throw ShapeError("WeightedSum: weight shape mismatch");
  }
  Matrix out(1, 1);
  out(0, 0) = a.value().cwiseProduct(weights).sum();
  return MakeResult(std::move(out), {a}, [weights](Node& self) {
    Parent(self, 0).Accumulate(weights * self.grad(0, 0));
  });
}

Tensor BceWithLogitsSum(const Tensor& logits, const Matrix& targets) {
  if (targets.rows() != logits.rows() || targets.cols() != logits.cols()) {
    throw ShapeError("BceWithLogitsSum: target shape mismatch");
  }
  const Matrix& z = logits.value();
  double total = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double zi = z.data()[i];
    const double yi = targets.data()[i];
    total += std::max(zi, 0.0) - zi * yi + std::log1p(std::exp(-std::abs(zi)));
  }
  Matrix out(1, 1);
  out(0, 0) = total;
  return MakeResult(std::move(out), {logits}, [targets](Node& self) {
    Node& p = Parent(self, 0);
    Matrix sig = p.value.unaryExpr([](double v) {
      if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
      const double e = std::exp(v);
      return e / (1.0 + e);
    });
    p.Accumulate((sig - targets) * self.grad(0, 0));
  });
}

Tensor RowBilinear(const Tensor& xs, const Tensor& u, const Tensor& xe,
                   Eigen::Index r) {
  if (xe.rows() != xs.rows()) {
    throw ShapeError(fmt::format("RowBilinear: xs {}x{}, xe {}x{}", xs.rows(),
                                 xs.cols(), xe.rows(), xe.cols()));
  }
  std::vector<int> group(static_cast<size_t>(xs.rows()));
  std::iota(group.begin(), group.end(), 0);
  return GroupedBilinear(xs, u, xe, group, r);
}

Tensor GroupedBilinear(const Tensor& xs, const Tensor& u, const Tensor& xe,
                       std::span<const int> group, Eigen::Index r) {
  const Eigen::Index d = xs.cols();
  const Eigen::Index k = xe.rows();
  if (xe.cols() != d || u.rows() != d || u.cols() != r * d ||
      static_cast<Eigen::Index>(group.size()) != k) {
    throw ShapeError(fmt::format(
        "GroupedBilinear: xs {}x{}, U {}x{}, xe {}x{}, {} groups, r={}",
        xs.rows(), xs.cols(), u.rows(), u.cols(), xe.rows(), xe.cols(),
        group.size(), r));
  }
  for (int g : group) {
    if (g < 0 || g >= xs.rows()) {
      throw ShapeError(
          fmt::format("GroupedBilinear: group {} of {} rows", g, xs.rows()));
    }
  }
  using DxR = Eigen::Map<const Matrix>;
  // Column g of lt, viewed as d x r, holds sum_p xs(g, p) U[p, :, :]^T.
  Matrix lt = u.value().transpose() * xs.value().transpose();
  const Matrix xet = xe.value().transpose();
  Matrix out(k, r);
  for (Eigen::Index i = 0; i < k; ++i) {
    out.row(i) = xet.col(i).transpose() * DxR(lt.col(group[i]).data(), d, r);
  }
  std::vector<int> index(group.begin(), group.end());
  return MakeResult(
      std::move(out), {xs, u, xe},
      [lt = std::move(lt), xet, index, r, d](Node& self) {
        Node& pxs = Parent(self, 0);
        Node& pu = Parent(self, 1);
        Node& pxe = Parent(self, 2);
        const Eigen::Index k = self.grad.rows();
        Matrix dlt = Matrix::Zero(lt.rows(), lt.cols());
        Matrix dxet(d, k);
        for (Eigen::Index i = 0; i < k; ++i) {
          const int g = index[i];
          Eigen::Map<Matrix>(dlt.col(g).data(), d, r).noalias() +=
              xet.col(i) * self.grad.row(i);
          dxet.col(i).noalias() =
              DxR(lt.col(g).data(), d, r) * self.grad.row(i).transpose();
        }
        if (pxe.requires_grad) pxe.Accumulate(dxet.transpose());
        if (pu.requires_grad) {
          pu.Accumulate(pxs.value.transpose() * dlt.transpose());
        }
        if (pxs.requires_grad) {
          pxs.Accumulate(dlt.transpose() * pu.value.transpose());
        }
      });
}

}  // namespace corefcs::nn
