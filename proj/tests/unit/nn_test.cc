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


#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "corefcs/base/error.h"
#include "corefcs/nn/layers.h"
#include "corefcs/nn/optim.h"
#include "corefcs/nn/tensor.h"
#include "testing/generators.h"
#include "testing/gradcheck.h"

namespace corefcs::nn {
namespace {

using corefcs::testing::GradientRelativeError;
using corefcs::testing::RandomMatrix;

constexpr double kTol = 1e-6;

class OpGradientTest : public ::testing::Test {
 protected:
  Tensor Param(Eigen::Index r, Eigen::Index c, double scale = 1.0) {
    return Tensor(RandomMatrix(rng_, r, c, scale), true);
  }
  // Scalar functional sum(R .* f()) with a fixed random R.
  std::function<Tensor()> Weighted(std::function<Tensor()> f) {
    const Matrix probe = f().value();
    auto weights =
        std::make_shared<Matrix>(RandomMatrix(rng_, probe.rows(), probe.cols()));
    return [f, weights] { return WeightedSum(f(), *weights); };
  }
  std::mt19937_64 rng_{17};
};

TEST_F(OpGradientTest, MatMulAddSubMul) {
  Tensor a = Param(3, 4), b = Param(4, 2), c = Param(3, 4);
  auto mm = Weighted([&] { return MatMul(a, b); });
  EXPECT_LT(GradientRelativeError(mm, a), kTol);
  EXPECT_LT(GradientRelativeError(mm, b), kTol);
  auto asm_ = Weighted([&] { return Mul(Add(a, c), Sub(a, c)); });
  EXPECT_LT(GradientRelativeError(asm_, a), kTol);
  EXPECT_LT(GradientRelativeError(asm_, c), kTol);
}

TEST_F(OpGradientTest, ScaleShiftBroadcastTranspose) {
  Tensor a = Param(3, 4), row = Param(1, 4);
  auto f = Weighted([&] {
    return Transpose(AddScalar(Scale(AddRowBroadcast(a, row), 1.5), 0.25));
  });
  EXPECT_LT(GradientRelativeError(f, a), kTol);
  EXPECT_LT(GradientRelativeError(f, row), kTol);
  auto g = Weighted([&] { return Mul(BroadcastRows(row, 3), a); });
  EXPECT_LT(GradientRelativeError(g, row), kTol);
}

TEST_F(OpGradientTest, Nonlinearities) {
  Tensor a = Param(4, 5);
  for (auto op : {Sigmoid, Tanh, Gelu, SoftmaxRows}) {
    EXPECT_LT(GradientRelativeError(Weighted([&] { return op(a); }), a), kTol);
  }
}

TEST_F(OpGradientTest, LayerNorm) {
  Tensor x = Param(4, 6), gamma = Param(1, 6), beta = Param(1, 6);
  auto f = Weighted([&] { return LayerNormRows(x, gamma, beta); });
  EXPECT_LT(GradientRelativeError(f, x), 1e-5);
  EXPECT_LT(GradientRelativeError(f, gamma), kTol);
  EXPECT_LT(GradientRelativeError(f, beta), kTol);
}

TEST_F(OpGradientTest, ShapeOps) {
  Tensor a = Param(4, 3), b = Param(4, 2), c = Param(2, 3);
  auto cols = Weighted([&] {
    const Tensor parts[] = {a, b};
    return ConcatCols(parts);
  });
  EXPECT_LT(GradientRelativeError(cols, a), kTol);
  EXPECT_LT(GradientRelativeError(cols, b), kTol);
  auto rows = Weighted([&] {
    const Tensor parts[] = {a, c};
    return ConcatRows(parts);
  });
  EXPECT_LT(GradientRelativeError(rows, c), kTol);
  auto slices = Weighted([&] {
    return Mul(SliceRows(a, 1, 2), SliceCols(SliceRows(a, 0, 2), 0, 3));
  });
  EXPECT_LT(GradientRelativeError(slices, a), kTol);
  const std::vector<int> idx = {3, 0, 3, 1};
  auto gather = Weighted([&] { return GatherRows(a, idx); });
  EXPECT_LT(GradientRelativeError(gather, a), kTol);
}

TEST_F(OpGradientTest, Reductions) {
  Tensor a = Param(3, 4);
  EXPECT_LT(GradientRelativeError([&] { return Sum(Mul(a, a)); }, a), kTol);
  EXPECT_LT(GradientRelativeError([&] { return Mean(Mul(a, a)); }, a), kTol);
  EXPECT_LT(GradientRelativeError(Weighted([&] { return MeanRows(a); }), a),
            kTol);
}

TEST_F(OpGradientTest, BceWithLogits) {
  Tensor z = Param(6, 1, 3.0);
  Matrix targets(6, 1);
  targets << 1, 0, 1, 0, 0.5, 1;
  EXPECT_LT(GradientRelativeError([&] { return BceWithLogitsSum(z, targets); },
                                  z),
            kTol);
}

TEST_F(OpGradientTest, RowBilinear) {
  const int d = 3, r = 2;
  Tensor xs = Param(4, d), xe = Param(4, d), u = Param(d, r * d);
  auto f = Weighted([&] { return RowBilinear(xs, u, xe, r); });
  EXPECT_LT(GradientRelativeError(f, xs), kTol);
  EXPECT_LT(GradientRelativeError(f, xe), kTol);
  EXPECT_LT(GradientRelativeError(f, u), kTol);
}

TEST_F(OpGradientTest, GroupedBilinear) {
  const int d = 3, r = 2;
  const std::vector<int> group = {1, 1, 0, 2, 1};
  Tensor xs = Param(3, d), xe = Param(5, d), u = Param(d, r * d);
  auto f = Weighted([&] { return GroupedBilinear(xs, u, xe, group, r); });
  EXPECT_LT(GradientRelativeError(f, xs), kTol);
  EXPECT_LT(GradientRelativeError(f, xe), kTol);
  EXPECT_LT(GradientRelativeError(f, u), kTol);
  // Same values as pairing each row with its gathered start.
  const Matrix grouped = GroupedBilinear(xs, u, xe, group, r).value();
  const Matrix direct = RowBilinear(GatherRows(xs, group), u, xe, r).value();
  EXPECT_TRUE(grouped.isApprox(direct, 1e-12));
  const std::vector<int> bad = {0, 3, 0, 0, 0};
  EXPECT_THROW(GroupedBilinear(xs, u, xe, bad, r), ShapeError);
  EXPECT_THROW(GroupedBilinear(xs, u, xe, std::span(group).first(4), r),
               ShapeError);
}

TEST(TensorTest, BceValueIsStableForLargeLogits) {
  Matrix z(2, 1);
  z << 800.0, -800.0;
  Matrix t(2, 1);
  t << 1.0, 0.0;
  EXPECT_NEAR(BceWithLogitsSum(Tensor(z), t).item(), 0.0, 1e-12);
  t << 0.0, 1.0;
  EXPECT_NEAR(BceWithLogitsSum(Tensor(z), t).item(), 1600.0, 1e-9);
  EXPECT_NEAR(BceWithLogitsSum(Tensor(Matrix::Zero(3, 1)), t.topRows(1)
                                                        .replicate(3, 1))
                  .item(),
              3 * std::log(2.0), 1e-12);
}

TEST(TensorTest, NoGradGuardRecordsNoParents) {
  Tensor a(Matrix::Ones(2, 2), true);
  {
    NoGradGuard guard;
    EXPECT_FALSE(GradEnabled());
    const Tensor b = Mul(a, a);
    EXPECT_TRUE(b.node()->parents.empty());
  }
  EXPECT_TRUE(GradEnabled());
  EXPECT_EQ(Mul(a, a).node()->parents.size(), 2u);
}

TEST(TensorTest, GradientsAccumulateUntilZeroGrad) {
  Tensor a(Matrix::Constant(1, 1, 3.0), true);
  Sum(Mul(a, a)).Backward();
  Sum(Mul(a, a)).Backward();
  EXPECT_DOUBLE_EQ(a.grad()(0, 0), 12.0);
  a.ZeroGrad();
  EXPECT_DOUBLE_EQ(a.grad()(0, 0), 0.0);
}

TEST(TensorTest, ShapeMismatchThrows) {
  EXPECT_THROW(MatMul(Tensor(Matrix::Ones(2, 3)), Tensor(Matrix::Ones(2, 3))),
               ShapeError);
  EXPECT_THROW(Add(Tensor(Matrix::Ones(2, 3)), Tensor(Matrix::Ones(3, 2))),
               ShapeError);
}

TEST(LayersTest, LayerNormStartsAtIdentityAffine) {
  LayerNorm norm(4);
  EXPECT_TRUE(norm.gamma.value().isOnes());
  EXPECT_TRUE(norm.beta.value().isZero());
  std::mt19937_64 rng(1);
  const Matrix out =
      norm.Forward(Tensor(RandomMatrix(rng, 5, 4, 3.0))).value();
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    EXPECT_NEAR(out.row(i).mean(), 0.0, 1e-12);
    const double var = (out.row(i).array() - out.row(i).mean()).square().mean();
    EXPECT_NEAR(var, 1.0, 1e-4);
  }
}

TEST(LayersTest, MultiHeadAttentionGradients) {
  Initializer init(3);
  MultiHeadAttention mha(8, 2, init);
  std::mt19937_64 rng(5);
  Tensor q(RandomMatrix(rng, 4, 8), true), mem(RandomMatrix(rng, 3, 8), true);
  const Matrix w = RandomMatrix(rng, 4, 8);
  auto f = [&] { return WeightedSum(mha.Forward(q, mem), w); };
  EXPECT_LT(GradientRelativeError(f, q), 1e-6);
  EXPECT_LT(GradientRelativeError(f, mem), 1e-6);
  EXPECT_LT(GradientRelativeError(f, mha.q.weight), 1e-6);
  EXPECT_LT(GradientRelativeError(f, mha.o.weight), 1e-6);
}

TEST(LayersTest, ParameterNamesMustBeUnique) {
  ParameterSet set;
  set.Add("a", Tensor(Matrix::Ones(1, 1), true), ParamGroup::kHeads);
  EXPECT_THROW(set.Add("a", Tensor(Matrix::Ones(1, 1), true),
                       ParamGroup::kHeads),
               ConfigError);
  EXPECT_NE(set.Find("a"), nullptr);
  EXPECT_EQ(set.Find("b"), nullptr);
}

TEST(LayersTest, InitializerIsDeterministic) {
  Initializer a(9), b(9), c(10);
  const Matrix x = a.Glorot(3, 4);
  EXPECT_EQ(x, b.Glorot(3, 4));
  EXPECT_NE(x, c.Glorot(3, 4));
}

TEST(OptimTest, AdafactorMinimizesQuadraticWithGroupRates) {
  ParameterSet set;
  Tensor enc(Matrix::Constant(3, 2, 2.0), true);
  Tensor head(Matrix::Constant(1, 4, -2.0), true);
  set.Add("enc", enc, ParamGroup::kEncoder);
  set.Add("head", head, ParamGroup::kHeads);
  Adafactor::Options options;
  options.lr_encoder = 0.0;
  options.lr_heads = 0.05;
  Adafactor opt(set, options);
  double first = 0.0;
  for (int step = 0; step < 200; ++step) {
    set.ZeroGrad();
    const Tensor loss = Add(Sum(Mul(enc, enc)), Sum(Mul(head, head)));
    if (step == 0) first = loss.item();
    loss.Backward();
    opt.Step();
  }
  EXPECT_EQ(opt.step_count(), 200);
  // Zero learning rate leaves the encoder group untouched.
  EXPECT_TRUE(enc.value().isApprox(Matrix::Constant(3, 2, 2.0)));
  EXPECT_LT(head.value().squaredNorm(), 0.01 * 16.0);
  EXPECT_GT(first, 0.0);
}

TEST(OptimTest, LinearWarmupThenDecay) {
  EXPECT_DOUBLE_EQ(LinearWarmupFactor(0, 10, 100), 0.1);
  EXPECT_DOUBLE_EQ(LinearWarmupFactor(9, 10, 100), 1.0);
  EXPECT_DOUBLE_EQ(LinearWarmupFactor(10, 10, 100), 1.0);
  EXPECT_DOUBLE_EQ(LinearWarmupFactor(55, 10, 100), 0.5);
  EXPECT_DOUBLE_EQ(LinearWarmupFactor(100, 10, 100), 0.0);
  EXPECT_DOUBLE_EQ(LinearWarmupFactor(0, 0, 10), 1.0);
}

TEST(OptimTest, ClipGradNormScalesToBound) {
  ParameterSet set;
  Tensor a(Matrix::Zero(1, 2), true);
  set.Add("a", a, ParamGroup::kHeads);
  a.node()->Accumulate((Matrix(1, 2) << 3.0, 4.0).finished());
  EXPECT_DOUBLE_EQ(ClipGradNorm(set, 1.0), 5.0);
  EXPECT_NEAR(a.grad().norm(), 1.0, 1e-12);
  EXPECT_NEAR(ClipGradNorm(set, 10.0), 1.0, 1e-12);
  EXPECT_NEAR(a.grad().norm(), 1.0, 1e-12);
}

}  // namespace
}  // namespace corefcs::nn
