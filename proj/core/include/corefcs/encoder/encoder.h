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

// Document encoding: each segment is wrapped in CLS/SEP, encoded by a
// SegmentEncoder, optionally bridged from the previous segment's SEP row, and
// the token rows are concatenated into an M x d_h matrix.

#ifndef COREFCS_ENCODER_ENCODER_H_
#define COREFCS_ENCODER_ENCODER_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corefcs/corpus/document.h"
#include "corefcs/corpus/segment.h"
#include "corefcs/nn/layers.h"

namespace corefcs {

enum class EncoderBackend { kToyTransformer, kPretrained };
enum class Bridging { kNone, kLbmFc, kLbmMha };

EncoderBackend ParseEncoderBackend(std::string_view name);
std::string_view EncoderBackendName(EncoderBackend backend);
Bridging ParseBridging(std::string_view name);
std::string_view BridgingName(Bridging bridging);

struct EncoderConfig {
  int d_h = 64;
  EncoderBackend backend = EncoderBackend::kToyTransformer;
  Bridging bridging = Bridging::kNone;
  int mha_heads = 4;
  int window = 512;  // T, including CLS and SEP
  SegmentStrategy strategy = SegmentStrategy::kIndependent;
  // Toy transformer shape.
  int layers = 2;
  int attention_heads = 4;
  int ffn_dim = 128;

  // Throws ConfigError on inconsistent settings.
  void Validate() const;
  bool operator==(const EncoderConfig&) const = default;
};

// Token-to-id map with reserved entries for padding-free encoder inputs.
class Vocabulary {
 public:
  static constexpr int kUnk = 0;
  static constexpr int kCls = 1;
  static constexpr int kSep = 2;

  Vocabulary();
  static Vocabulary Build(std::span<const Document> docs);
  static Vocabulary FromTokens(std::vector<std::string> tokens);

  int Id(const std::string& token) const;
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  void Insert(const std::string& token);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

// Encodes one segment: returns (n + 2) x dim() rows ordered
// [cls, t_1 .. t_n, sep].
class SegmentEncoder {
 public:
  virtual ~SegmentEncoder() = default;
  virtual int dim() const = 0;
  virtual int max_tokens() const = 0;
  virtual nn::Tensor EncodeSegment(std::span<const std::string> tokens) const = 0;
  virtual void RegisterParameters(nn::ParameterSet& set) const = 0;
};

// Small trainable post-norm transformer with learned positions.
class ToyTransformer : public SegmentEncoder {
 public:
  ToyTransformer(const EncoderConfig& config, Vocabulary vocab,
                 nn::Initializer& init);

  int dim() const override { return dim_; }
  int max_tokens() const override { return window_ - 2; }
  nn::Tensor EncodeSegment(
      std::span<const std::string> tokens) const override;
  void RegisterParameters(nn::ParameterSet& set) const override;
  const Vocabulary& vocab() const { return vocab_; }

 private:
  struct Layer {
    nn::MultiHeadAttention attention;
    nn::LayerNorm attention_norm;
    nn::Linear ffn_in;
    nn::Linear ffn_out;
    nn::LayerNorm ffn_norm;
  };

  int dim_;
  int window_;
  Vocabulary vocab_;
  nn::Embedding tokens_;
  nn::Embedding positions_;
  std::vector<Layer> layers_;
};

// Factory for the pretrained backend. None is linked in by default; an
// application embedding a pretrained encoder registers one here.
using PretrainedEncoderFactory =
    std::function<std::unique_ptr<SegmentEncoder>(const EncoderConfig&)>;
void RegisterPretrainedEncoderFactory(PretrainedEncoderFactory factory);

// Lightweight bridging module: H_next <- LayerNorm(Hhat + H_next).
class BridgeModule {
 public:
  virtual ~BridgeModule() = default;
  // h_sep is 1 x d; h_next is k x d. Returns k x d.
  virtual nn::Tensor Apply(const nn::Tensor& h_sep,
                           const nn::Tensor& h_next) const = 0;
  virtual void RegisterParameters(nn::ParameterSet& set) const = 0;
};

// Hhat = FC([broadcast(h_sep), H_next]) with FC: 2d -> d.
class LbmFc : public BridgeModule {
 public:
  LbmFc(int dim, nn::Initializer& init);
  nn::Tensor Apply(const nn::Tensor& h_sep,
                   const nn::Tensor& h_next) const override;
  void RegisterParameters(nn::ParameterSet& set) const override;

  nn::Linear fc;
  nn::LayerNorm norm;
};

// Hhat = MHA(queries = rows of H_next, memory = h_sep).
class LbmMha : public BridgeModule {
 public:
  LbmMha(int dim, int heads, nn::Initializer& init);
  nn::Tensor Apply(const nn::Tensor& h_sep,
                   const nn::Tensor& h_next) const override;
  void RegisterParameters(nn::ParameterSet& set) const override;

  nn::MultiHeadAttention attention;
  nn::LayerNorm norm;
};

class DocumentEncoder {
 public:
  DocumentEncoder(EncoderConfig config, std::unique_ptr<SegmentEncoder> encoder,
                  std::unique_ptr<BridgeModule> bridge);

  // Builds the configured backend and bridge.
  static DocumentEncoder Create(const EncoderConfig& config, Vocabulary vocab,
                                nn::Initializer& init);

  // Returns the M x d_h token representation.
  nn::Tensor Encode(const Document& doc) const;
  // Raw segment output with CLS/SEP rows; throws ShapeError when the slice is
  // longer than the window payload.
  nn::Tensor EncodeSegment(std::span<const std::string> tokens) const;

  void RegisterParameters(nn::ParameterSet& set) const;
  const EncoderConfig& config() const { return config_; }
  const SegmentEncoder& segment_encoder() const { return *encoder_; }
  const BridgeModule* bridge() const { return bridge_.get(); }

 private:
  EncoderConfig config_;
  std::unique_ptr<SegmentEncoder> encoder_;
  std::unique_ptr<BridgeModule> bridge_;
};

// Throws ValidationError if any entry is NaN or infinite.
void CheckFinite(const nn::Matrix& m, std::string_view what);

}  // namespace corefcs

#endif  // COREFCS_ENCODER_ENCODER_H_
