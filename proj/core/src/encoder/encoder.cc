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

#include "corefcs/encoder/encoder.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include <fmt/format.h>

#include "corefcs/base/error.h"

namespace corefcs {
namespace {

std::mutex factory_mutex;
PretrainedEncoderFactory& Factory() {
  static PretrainedEncoderFactory factory;
  return factory;
}

}  // namespace

EncoderBackend ParseEncoderBackend(std::string_view name) {
  if (name == "toy_transformer") return EncoderBackend::kToyTransformer;
  if (name == "pretrained") return EncoderBackend::kPretrained;
  throw ConfigError(fmt::format("unknown encoder backend '{}'", name));
}

std::string_view EncoderBackendName(EncoderBackend backend) {
  return backend == EncoderBackend::kToyTransformer ? "toy_transformer"
                                                    : "pretrained";
}

Bridging ParseBridging(std::string_view name) {
  if (name == "none") return Bridging::kNone;
  if (name == "lbm_fc") return Bridging::kLbmFc;
  if (name == "lbm_mha") return Bridging::kLbmMha;
  throw ConfigError(fmt::format("unknown bridging '{}'", name));
}

std::string_view BridgingName(Bridging bridging) {
  switch (bridging) {
    case Bridging::kNone:
      return "none";
    case Bridging::kLbmFc:
      return "lbm_fc";
    case Bridging::kLbmMha:
      return "lbm_mha";
  }
  return "none";
}

void EncoderConfig::Validate() const {
  if (d_h <= 0) throw ConfigError("encoder d_h must be positive");
  if (window < 3) {
    throw ConfigError(fmt::format("encoder window {} is below 3", window));
  }
  if (bridging == Bridging::kLbmMha && (mha_heads <= 0 || d_h % mha_heads)) {
    throw ConfigError(fmt::format(
        "d_h {} is not divisible by mha_heads {}", d_h, mha_heads));
  }
  if (bridging != Bridging::kNone &&
      strategy == SegmentStrategy::kOverlapping) {
    throw ConfigError("bridging applies to the independent strategy only");
  }
  if (backend == EncoderBackend::kToyTransformer) {
    if (layers < 0) throw ConfigError("encoder layers must be >= 0");
    if (attention_heads <= 0 || d_h % attention_heads) {
      throw ConfigError(fmt::format(
          "d_h {} is not divisible by attention_heads {}", d_h,
          attention_heads));
    }
    if (ffn_dim <= 0) throw ConfigError("ffn_dim must be positive");
  }
}

Vocabulary::Vocabulary() {
  Insert("<unk>");
  Insert("[CLS]");
  Insert("[SEP]");
}

Vocabulary Vocabulary::Build(std::span<const Document> docs) {
  Vocabulary v;
  for (const Document& d : docs) {
    for (const std::string& t : d.tokens) v.Insert(t);
  }
  return v;
}

Vocabulary Vocabulary::FromTokens(std::vector<std::string> tokens) {
  if (tokens.size() < 3 || tokens[kUnk] != "<unk>" || tokens[kCls] != "[CLS]" ||
      tokens[kSep] != "[SEP]") {
    throw ParseError("vocabulary must start with <unk>, [CLS], [SEP]");
  }
  Vocabulary v;
  for (size_t i = 3; i < tokens.size(); ++i) v.Insert(tokens[i]);
  if (v.size() != static_cast<int>(tokens.size())) {
    throw ParseError("vocabulary has duplicate entries");
  }
  return v;
}

int Vocabulary::Id(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnk : it->second;
}

void Vocabulary::Insert(const std::string& token) {
  if (ids_.emplace(token, size()).second) tokens_.push_back(token);
}

ToyTransformer::ToyTransformer(const EncoderConfig& config, Vocabulary vocab,
                               nn::Initializer& init)
    : dim_(config.d_h),
      window_(config.window),
      vocab_(std::move(vocab)),
      tokens_(vocab_.size(), config.d_h, init),
      positions_(config.window, config.d_h, init) {
  for (int i = 0; i < config.layers; ++i) {
    layers_.push_back(Layer{
        nn::MultiHeadAttention(config.d_h, config.attention_heads, init),
        nn::LayerNorm(config.d_h),
        nn::Linear(config.d_h, config.ffn_dim, init),
        nn::Linear(config.ffn_dim, config.d_h, init),
        nn::LayerNorm(config.d_h),
    });
  }
}

nn::Tensor ToyTransformer::EncodeSegment(
    std::span<const std::string> tokens) const {
  if (static_cast<int>(tokens.size()) > max_tokens()) {
    throw ShapeError(fmt::format("segment of {} tokens exceeds window {}",
                                 tokens.size(), window_));
  }
  std::vector<int> ids;
  ids.reserve(tokens.size() + 2);
  ids.push_back(Vocabulary::kCls);
  for (const std::string& t : tokens) ids.push_back(vocab_.Id(t));
  ids.push_back(Vocabulary::kSep);
  std::vector<int> pos(ids.size());
  std::iota(pos.begin(), pos.end(), 0);

  nn::Tensor x = nn::Add(tokens_.Forward(ids), positions_.Forward(pos));
  for (const Layer& layer : layers_) {
    x = layer.attention_norm.Forward(
        nn::Add(x, layer.attention.Forward(x, x)));
    nn::Tensor ff = layer.ffn_out.Forward(nn::Gelu(layer.ffn_in.Forward(x)));
    x = layer.ffn_norm.Forward(nn::Add(x, ff));
  }
  return x;
}

void ToyTransformer::RegisterParameters(nn::ParameterSet& set) const {
  const auto g = nn::ParamGroup::kEncoder;
  tokens_.Register(set, "encoder.tokens", g);
  positions_.Register(set, "encoder.positions", g);
  for (size_t i = 0; i < layers_.size(); ++i) {
    const std::string p = fmt::format("encoder.layer{}", i);
    layers_[i].attention.Register(set, p + ".attention", g);
    layers_[i].attention_norm.Register(set, p + ".attention_norm", g);
    layers_[i].ffn_in.Register(set, p + ".ffn_in", g);
    layers_[i].ffn_out.Register(set, p + ".ffn_out", g);
    layers_[i].ffn_norm.Register(set, p + ".ffn_norm", g);
  }
}

void RegisterPretrainedEncoderFactory(PretrainedEncoderFactory factory) {
  std::lock_guard<std::mutex> lock(factory_mutex);
  Factory() = std::move(factory);
}

LbmFc::LbmFc(int dim, nn::Initializer& init)
    : fc(2 * dim, dim, init), norm(dim) {}

nn::Tensor LbmFc::Apply(const nn::Tensor& h_sep,
                        const nn::Tensor& h_next) const {
  if (h_sep.rows() != 1 || h_sep.cols() != h_next.cols() ||
      h_next.cols() * 2 != fc.in_dim()) {
    throw ShapeError(fmt::format("lbm_fc: h_sep {}x{}, H {}x{}, FC in {}",
                                 h_sep.rows(), h_sep.cols(), h_next.rows(),
                                 h_next.cols(), fc.in_dim()));
  }
  const nn::Tensor parts[] = {nn::BroadcastRows(h_sep, h_next.rows()), h_next};
  nn::Tensor hat = fc.Forward(nn::ConcatCols(parts));
  return norm.Forward(nn::Add(hat, h_next));
}

void LbmFc::RegisterParameters(nn::ParameterSet& set) const {
  fc.Register(set, "bridge.fc", nn::ParamGroup::kHeads);
  norm.Register(set, "bridge.norm", nn::ParamGroup::kHeads);
}

LbmMha::LbmMha(int dim, int heads, nn::Initializer& init)
    : attention(dim, heads, init), norm(dim) {}

nn::Tensor LbmMha::Apply(const nn::Tensor& h_sep,
                         const nn::Tensor& h_next) const {
  if (h_sep.rows() != 1 || h_sep.cols() != h_next.cols()) {
    throw ShapeError(fmt::format("lbm_mha: h_sep {}x{}, H {}x{}", h_sep.rows(),
                                 h_sep.cols(), h_next.rows(), h_next.cols()));
  }
  nn::Tensor hat = attention.Forward(h_next, h_sep);
  return norm.Forward(nn::Add(hat, h_next));
}

void LbmMha::RegisterParameters(nn::ParameterSet& set) const {
  attention.Register(set, "bridge.mha", nn::ParamGroup::kHeads);
  norm.Register(set, "bridge.norm", nn::ParamGroup::kHeads);
}

DocumentEncoder::DocumentEncoder(EncoderConfig config,
                                 std::unique_ptr<SegmentEncoder> encoder,
                                 std::unique_ptr<BridgeModule> bridge)
    : config_(std::move(config)),
      encoder_(std::move(encoder)),
      bridge_(std::move(bridge)) {
  config_.Validate();
  if (encoder_->dim() != config_.d_h) {
    throw ConfigError(fmt::format("segment encoder width {} != d_h {}",
                                  encoder_->dim(), config_.d_h));
  }
  if ((config_.bridging == Bridging::kNone) != (bridge_ == nullptr)) {
    throw ConfigError("bridge module does not match the bridging setting");
  }
}

DocumentEncoder DocumentEncoder::Create(const EncoderConfig& config,
                                        Vocabulary vocab,
                                        nn::Initializer& init) {
  config.Validate();
  std::unique_ptr<SegmentEncoder> encoder;
  if (config.backend == EncoderBackend::kToyTransformer) {
    encoder = std::make_unique<ToyTransformer>(config, std::move(vocab), init);
  } else {
    std::lock_guard<std::mutex> lock(factory_mutex);
    if (!Factory()) {
      throw ConfigError(
          "no pretrained encoder is registered in this build; use "
          "backend toy_transformer");
    }
    encoder = Factory()(config);
  }
  std::unique_ptr<BridgeModule> bridge;
  if (config.bridging == Bridging::kLbmFc) {
    bridge = std::make_unique<LbmFc>(config.d_h, init);
  } else if (config.bridging == Bridging::kLbmMha) {
    bridge = std::make_unique<LbmMha>(config.d_h, config.mha_heads, init);
  }
  return DocumentEncoder(config, std::move(encoder), std::move(bridge));
}

nn::Tensor DocumentEncoder::EncodeSegment(
    std::span<const std::string> tokens) const {
  if (static_cast<int>(tokens.size()) > config_.window - 2) {
    throw ShapeError(fmt::format("segment of {} tokens exceeds window {}",
                                 tokens.size(), config_.window));
  }
  return encoder_->EncodeSegment(tokens);
}

nn::Tensor DocumentEncoder::Encode(const Document& doc) const {
  const std::vector<Segment> segments =
      SegmentDocument(doc, config_.strategy, config_.window);
  std::vector<nn::Tensor> blocks;
  nn::Tensor prev_sep;
  int covered = 0;  // tokens [0, covered) already harvested
  for (const Segment& seg : segments) {
    std::span<const std::string> slice(doc.tokens.data() + seg.start,
                                       static_cast<size_t>(seg.length()));
    nn::Tensor h = EncodeSegment(slice);
    if (bridge_ && prev_sep.defined()) h = bridge_->Apply(prev_sep, h);
    prev_sep = nn::SliceRows(h, h.rows() - 1, 1);
    const int first_new = std::max(covered, seg.start);
    if (first_new < seg.end) {
      blocks.push_back(
          nn::SliceRows(h, 1 + first_new - seg.start, seg.end - first_new));
      covered = seg.end;
    }
  }
  nn::Tensor out = blocks.size() == 1 ? blocks.front() : nn::ConcatRows(blocks);
  CheckFinite(out.value(), doc.doc_id);
  return out;
}

void DocumentEncoder::RegisterParameters(nn::ParameterSet& set) const {
  encoder_->RegisterParameters(set);
  if (bridge_) bridge_->RegisterParameters(set);
}

void CheckFinite(const nn::Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw ValidationError(
        fmt::format("non-finite hidden representation for {}", what));
  }
}

}  // namespace corefcs
