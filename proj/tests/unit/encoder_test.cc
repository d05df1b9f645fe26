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


#include <memory>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "corefcs/base/error.h"
#include "corefcs/corpus/segment.h"
#include "corefcs/encoder/encoder.h"
#include "testing/generators.h"
#include "testing/gradcheck.h"

namespace corefcs {
namespace {

using nn::Matrix;
using nn::Tensor;
using testing::GradientRelativeError;
using testing::RandomMatrix;

EncoderConfig SmallConfig(int d_h = 16, int window = 16) {
  EncoderConfig c;
  c.d_h = d_h;
  c.window = window;
  c.layers = 1;
  c.attention_heads = 2;
  c.mha_heads = 2;
  c.ffn_dim = 2 * d_h;
  return c;
}

Document WordsDoc(int m) {
  Document doc;
  doc.doc_id = "enc";
  for (int i = 0; i < m; ++i) doc.tokens.push_back(fmt::format("w{}", i % 7));
  doc.sentence_ends = {m - 1};
  return doc;
}

Vocabulary TestVocab() {
  std::vector<std::string> tokens = {"<unk>", "[CLS]", "[SEP]"};
  for (int i = 0; i < 7; ++i) tokens.push_back(fmt::format("w{}", i));
  return Vocabulary::FromTokens(tokens);
}

Matrix RowLayerNorm(const Matrix& x) {
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double mean = x.row(i).mean();
    const double var = (x.row(i).array() - mean).square().mean();
    out.row(i) = (x.row(i).array() - mean) / std::sqrt(var + 1e-5);
  }
  return out;
}

void Zero(Tensor t) { t.mutable_value().setZero(); }

TEST(VocabularyTest, ReservedEntriesAndUnknown) {
  const Vocabulary v = TestVocab();
  EXPECT_EQ(v.Id("<unk>"), Vocabulary::kUnk);
  EXPECT_EQ(v.Id("[CLS]"), Vocabulary::kCls);
  EXPECT_EQ(v.Id("[SEP]"), Vocabulary::kSep);
  EXPECT_EQ(v.Id("w0"), 3);
  EXPECT_EQ(v.Id("never-seen"), Vocabulary::kUnk);
  EXPECT_THROW(Vocabulary::FromTokens({"a", "b"}), ParseError);
  EXPECT_EQ(Vocabulary::Build(std::vector<Document>{WordsDoc(20)}).size(), 10);
}

TEST(EncoderConfigTest, Validation) {
  EncoderConfig c = SmallConfig();
  EXPECT_NO_THROW(c.Validate());
  c.bridging = Bridging::kLbmFc;
  c.strategy = SegmentStrategy::kOverlapping;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = SmallConfig();
  c.bridging = Bridging::kLbmMha;
  c.mha_heads = 3;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = SmallConfig();
  c.window = 2;
  EXPECT_THROW(c.Validate(), ConfigError);
  EXPECT_EQ(ParseBridging("lbm_fc"), Bridging::kLbmFc);
  EXPECT_EQ(BridgingName(Bridging::kLbmMha), "lbm_mha");
  EXPECT_THROW(ParseBridging("bogus"), ConfigError);
}

TEST(EncodeSegmentTest, ShapeDeterminismAndEmpty) {
  nn::Initializer init(1);
  const DocumentEncoder enc =
      DocumentEncoder::Create(SmallConfig(16, 16), TestVocab(), init);
  const std::vector<std::string> five = {"w0", "w1", "w2", "w3", "w4"};
  const Matrix a = enc.EncodeSegment(five).value();
  EXPECT_EQ(a.rows(), 7);
  EXPECT_EQ(a.cols(), 16);
  EXPECT_EQ(a, enc.EncodeSegment(five).value());
  const Matrix empty = enc.EncodeSegment({}).value();
  EXPECT_EQ(empty.rows(), 2);
  EXPECT_EQ(empty.cols(), 16);
}

TEST(EncodeSegmentTest, OverlongSegmentIsSizeError) {
  nn::Initializer init(1);
  const DocumentEncoder enc =
      DocumentEncoder::Create(SmallConfig(16, 7), TestVocab(), init);
  const std::vector<std::string> six(6, "w1");
  EXPECT_THROW(enc.EncodeSegment(six), ShapeError);
  EXPECT_NO_THROW(enc.EncodeSegment(std::span(six).first(5)));
}

TEST(LbmFcTest, ZeroWeightsGiveLayerNormOfInput) {
  nn::Initializer init(2);
  LbmFc lbm(8, init);
  Zero(lbm.fc.weight);
  Zero(lbm.fc.bias);
  std::mt19937_64 rng(3);
  const Matrix h = RandomMatrix(rng, 5, 8);
  const Matrix out =
      lbm.Apply(Tensor(RandomMatrix(rng, 1, 8)), Tensor(h)).value();
  EXPECT_TRUE(out.isApprox(RowLayerNorm(h), 1e-12));
}

TEST(LbmFcTest, RowsAreNormalized) {
  nn::Initializer init(2);
  LbmFc lbm(8, init);
  std::mt19937_64 rng(4);
  const Matrix out = lbm.Apply(Tensor(RandomMatrix(rng, 1, 8)),
                               Tensor(RandomMatrix(rng, 6, 8)))
                         .value();
  ASSERT_EQ(out.rows(), 6);
  ASSERT_EQ(out.cols(), 8);
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    EXPECT_NEAR(out.row(i).mean(), 0.0, 1e-12);
    EXPECT_NEAR((out.row(i).array() - out.row(i).mean()).square().mean(), 1.0,
                1e-4);
  }
}

TEST(LbmFcTest, DimensionMismatchIsShapeError) {
  nn::Initializer init(2);
  LbmFc lbm(8, init);
  EXPECT_THROW(lbm.Apply(Tensor(Matrix::Ones(1, 6)), Tensor(Matrix::Ones(3, 8))),
               ShapeError);
  EXPECT_THROW(lbm.Apply(Tensor(Matrix::Ones(2, 8)), Tensor(Matrix::Ones(3, 8))),
               ShapeError);
}

// Gradient of a fixed random weighting of the output. The plain sum of a
// LayerNorm output with identity affine parameters is constant, which makes
// its gradient identically zero.
template <typename Bridge>
void ExpectBridgeGradients(const Bridge& lbm, int d, double tol) {
  std::mt19937_64 rng(11);
  Tensor h_sep(RandomMatrix(rng, 1, d), true);
  Tensor h_next(RandomMatrix(rng, 4, d), true);
  // Move the affine parameters off identity so every path is exercised.
  Tensor gamma = lbm.norm.gamma;
  gamma.mutable_value() = RandomMatrix(rng, 1, d);
  Tensor beta = lbm.norm.beta;
  beta.mutable_value() = RandomMatrix(rng, 1, d);
  const Matrix weights = RandomMatrix(rng, 4, d);
  auto loss = [&] { return nn::WeightedSum(lbm.Apply(h_sep, h_next), weights); };
  EXPECT_LT(GradientRelativeError(loss, h_sep), tol);
  EXPECT_LT(GradientRelativeError(loss, h_next), tol);
  nn::ParameterSet set;
  lbm.RegisterParameters(set);
  for (const nn::NamedParameter& p : set.params()) {
    EXPECT_LT(GradientRelativeError(loss, p.tensor), tol) << p.name;
  }
}

TEST(LbmFcTest, GradientsMatchFiniteDifferences) {
  nn::Initializer init(5);
  ExpectBridgeGradients(LbmFc(8, init), 8, 1e-4);
}

TEST(LbmMhaTest, SingleKeyWithIdentityProjectionsCopiesSep) {
  nn::Initializer init(6);
  LbmMha lbm(16, 4, init);
  Tensor v = lbm.attention.v.weight, o = lbm.attention.o.weight;
  v.mutable_value() = Matrix::Identity(16, 16);
  o.mutable_value() = Matrix::Identity(16, 16);
  Zero(lbm.attention.v.bias);
  Zero(lbm.attention.o.bias);
  std::mt19937_64 rng(7);
  const Matrix sep = RandomMatrix(rng, 1, 16);
  const Matrix h = RandomMatrix(rng, 9, 16);
  const Matrix hat = lbm.attention.Forward(Tensor(h), Tensor(sep)).value();
  ASSERT_EQ(hat.rows(), 9);
  for (Eigen::Index i = 0; i < 9; ++i) {
    EXPECT_TRUE(hat.row(i).isApprox(sep, 1e-12));
  }
  const Matrix out = lbm.Apply(Tensor(sep), Tensor(h)).value();
  EXPECT_EQ(out.rows(), 9);
  EXPECT_EQ(out.cols(), 16);
  EXPECT_TRUE(out.isApprox(RowLayerNorm(h.rowwise() + sep.row(0)), 1e-10));
}

TEST(LbmMhaTest, GradientsMatchFiniteDifferences) {
  nn::Initializer init(8);
  ExpectBridgeGradients(LbmMha(8, 2, init), 8, 1e-4);
}

TEST(LbmMhaTest, HeadDivisibilityIsConfigError) {
  EncoderConfig c = SmallConfig(16);
  c.bridging = Bridging::kLbmMha;
  c.mha_heads = 5;
  nn::Initializer init(1);
  EXPECT_THROW(DocumentEncoder::Create(c, TestVocab(), init), ConfigError);
}

TEST(LbmPropertyTest, ShapePreservedForAllRowCounts) {
  nn::Initializer init(9);
  LbmFc fc(8, init);
  LbmMha mha(8, 4, init);
  std::mt19937_64 rng(10);
  for (int k = 1; k <= 12; ++k) {
    const Tensor sep(RandomMatrix(rng, 1, 8));
    const Tensor h(RandomMatrix(rng, k, 8));
    for (const BridgeModule* b : {static_cast<const BridgeModule*>(&fc),
                                  static_cast<const BridgeModule*>(&mha)}) {
      const Matrix out = b->Apply(sep, h).value();
      EXPECT_EQ(out.rows(), k);
      EXPECT_EQ(out.cols(), 8);
      EXPECT_TRUE(out.allFinite());
    }
  }
}

TEST(LbmGradientFlowTest, FcParametersAllReceiveGradient) {
  nn::Initializer init(12);
  LbmFc lbm(8, init);
  std::mt19937_64 rng(13);
  const Matrix w = RandomMatrix(rng, 5, 8);
  nn::WeightedSum(lbm.Apply(Tensor(RandomMatrix(rng, 1, 8)),
                            Tensor(RandomMatrix(rng, 5, 8))),
                  w)
      .Backward();
  nn::ParameterSet set;
  lbm.RegisterParameters(set);
  for (const nn::NamedParameter& p : set.params()) {
    EXPECT_GT(p.tensor.grad().norm(), 0.0) << p.name;
  }
}

TEST(LbmGradientFlowTest, MhaQueryKeyProjectionsAreStructurallyInert) {
  // With one key the attention weights are identically 1, so the query and
  // key projections cannot influence the output. Every other parameter
  // receives gradient.
  nn::Initializer init(14);
  LbmMha lbm(8, 2, init);
  std::mt19937_64 rng(15);
  const Matrix w = RandomMatrix(rng, 5, 8);
  nn::WeightedSum(lbm.Apply(Tensor(RandomMatrix(rng, 1, 8)),
                            Tensor(RandomMatrix(rng, 5, 8))),
                  w)
      .Backward();
  nn::ParameterSet set;
  lbm.RegisterParameters(set);
  int inert = 0;
  for (const nn::NamedParameter& p : set.params()) {
    const bool query_or_key = p.name.find(".q.") != std::string::npos ||
                              p.name.find(".k.") != std::string::npos;
    if (query_or_key) {
      EXPECT_EQ(p.tensor.grad().norm(), 0.0) << p.name;
      ++inert;
    } else {
      EXPECT_GT(p.tensor.grad().norm(), 0.0) << p.name;
    }
  }
  EXPECT_EQ(inert, 4);
}

TEST(EncodeDocumentTest, SingleSegmentDropsClsAndSep) {
  for (Bridging b : {Bridging::kNone, Bridging::kLbmFc, Bridging::kLbmMha}) {
    EncoderConfig c = SmallConfig(16, 16);
    c.bridging = b;
    nn::Initializer init(20);
    const DocumentEncoder enc = DocumentEncoder::Create(c, TestVocab(), init);
    const Document doc = WordsDoc(10);
    const Matrix seg = enc.EncodeSegment(doc.tokens).value();
    EXPECT_EQ(enc.Encode(doc).value(), seg.middleRows(1, 10));
  }
}

TEST(EncodeDocumentTest, NoBridgingConcatenatesSegments) {
  nn::Initializer init(21);
  const DocumentEncoder enc =
      DocumentEncoder::Create(SmallConfig(16, 7), TestVocab(), init);
  const Document doc = WordsDoc(10);
  const std::span<const std::string> tokens(doc.tokens);
  const Matrix first = enc.EncodeSegment(tokens.subspan(0, 5)).value();
  const Matrix second = enc.EncodeSegment(tokens.subspan(5, 5)).value();
  const Matrix out = enc.Encode(doc).value();
  ASSERT_EQ(out.rows(), 10);
  EXPECT_EQ(out.topRows(5), first.middleRows(1, 5));
  EXPECT_EQ(out.bottomRows(5), second.middleRows(1, 5));
}

TEST(EncodeDocumentTest, OverlappingKeepsFirstOccurrence) {
  EncoderConfig c = SmallConfig(16, 7);
  c.strategy = SegmentStrategy::kOverlapping;
  nn::Initializer init(22);
  const DocumentEncoder enc = DocumentEncoder::Create(c, TestVocab(), init);
  const Document doc = WordsDoc(10);
  const Matrix out = enc.Encode(doc).value();
  ASSERT_EQ(out.rows(), 10);
  const std::span<const std::string> tokens(doc.tokens);
  Matrix expected(10, 16);
  int covered = 0;
  for (const Segment& s :
       SegmentDocument(doc, SegmentStrategy::kOverlapping, 7)) {
    const Matrix h =
        enc.EncodeSegment(tokens.subspan(s.start, s.length())).value();
    for (int t = covered; t < s.end; ++t) {
      expected.row(t) = h.row(1 + t - s.start);
    }
    covered = s.end;
  }
  EXPECT_EQ(out, expected);
}

TEST(EncodeDocumentTest, ZeroFcBridgeNormalizesSecondBlockOnly) {
  EncoderConfig c = SmallConfig(16, 7);
  c.bridging = Bridging::kLbmFc;
  nn::Initializer init(23);
  const DocumentEncoder enc = DocumentEncoder::Create(c, TestVocab(), init);
  const auto* fc = dynamic_cast<const LbmFc*>(enc.bridge());
  ASSERT_NE(fc, nullptr);
  Zero(fc->fc.weight);
  Zero(fc->fc.bias);
  const Document doc = WordsDoc(10);
  const std::span<const std::string> tokens(doc.tokens);
  const Matrix first = enc.EncodeSegment(tokens.subspan(0, 5)).value();
  const Matrix second = enc.EncodeSegment(tokens.subspan(5, 5)).value();
  const Matrix out = enc.Encode(doc).value();
  EXPECT_EQ(out.topRows(5), first.middleRows(1, 5));
  EXPECT_TRUE(out.bottomRows(5).isApprox(
      RowLayerNorm(second).middleRows(1, 5), 1e-12));
}

TEST(EncodeDocumentTest, LaterSegmentsNeverChangeEarlierRows) {
  for (Bridging b : {Bridging::kNone, Bridging::kLbmFc, Bridging::kLbmMha}) {
    EncoderConfig c = SmallConfig(16, 6);
    c.bridging = b;
    nn::Initializer init(24);
    const DocumentEncoder enc = DocumentEncoder::Create(c, TestVocab(), init);
    Document doc = WordsDoc(13);  // segments of 4: [0,4) [4,8) [8,12) [12,13)
    const Matrix base = enc.Encode(doc).value();
    for (int j = 1; j < 4; ++j) {
      Document changed = doc;
      for (int t = 4 * j; t < std::min(4 * j + 4, 13); ++t) {
        changed.tokens[t] = "w6";
      }
      const Matrix out = enc.Encode(changed).value();
      EXPECT_EQ(out.topRows(4 * j), base.topRows(4 * j))
          << BridgingName(b) << " segment " << j;
      if (b != Bridging::kNone && j < 3) {
        // Bridging carries the change forward.
        EXPECT_NE(out.bottomRows(13 - 4 * (j + 1)),
                  base.bottomRows(13 - 4 * (j + 1)));
      }
    }
  }
}

TEST(EncodeDocumentTest, ParametersAreRegisteredByGroup) {
  EncoderConfig c = SmallConfig(16, 16);
  c.bridging = Bridging::kLbmFc;
  nn::Initializer init(25);
  const DocumentEncoder enc = DocumentEncoder::Create(c, TestVocab(), init);
  nn::ParameterSet set;
  enc.RegisterParameters(set);
  int encoder = 0, bridge = 0;
  for (const nn::NamedParameter& p : set.params()) {
    if (p.name.rfind("encoder.", 0) == 0) {
      EXPECT_EQ(p.group, nn::ParamGroup::kEncoder);
      ++encoder;
    } else {
      EXPECT_EQ(p.name.rfind("bridge.", 0), 0u) << p.name;
      EXPECT_EQ(p.group, nn::ParamGroup::kHeads);
      ++bridge;
    }
  }
  EXPECT_GT(encoder, 0);
  EXPECT_EQ(bridge, 4);
}

class ConstantEncoder : public SegmentEncoder {
 public:
  explicit ConstantEncoder(int d) : d_(d) {}
  int dim() const override { return d_; }
  int max_tokens() const override { return 100; }
  Tensor EncodeSegment(std::span<const std::string> tokens) const override {
    return Tensor(Matrix::Constant(tokens.size() + 2, d_, 0.5));
  }
  void RegisterParameters(nn::ParameterSet&) const override {}

 private:
  int d_;
};

TEST(PretrainedBackendTest, RequiresRegisteredFactory) {
  EncoderConfig c = SmallConfig(8, 16);
  c.backend = EncoderBackend::kPretrained;
  nn::Initializer init(1);
  RegisterPretrainedEncoderFactory(nullptr);
  EXPECT_THROW(DocumentEncoder::Create(c, TestVocab(), init), ConfigError);
  RegisterPretrainedEncoderFactory([](const EncoderConfig& cfg) {
    return std::make_unique<ConstantEncoder>(cfg.d_h);
  });
  const DocumentEncoder enc = DocumentEncoder::Create(c, TestVocab(), init);
  EXPECT_EQ(enc.Encode(WordsDoc(5)).value(), Matrix::Constant(5, 8, 0.5));
  RegisterPretrainedEncoderFactory(nullptr);
}

TEST(CheckFiniteTest, RejectsNan) {
  Matrix m = Matrix::Zero(2, 2);
  EXPECT_NO_THROW(CheckFinite(m, "x"));
  m(1, 1) = std::nan("");
  EXPECT_THROW(CheckFinite(m, "x"), ValidationError);
}

}  // namespace
}  // namespace corefcs
