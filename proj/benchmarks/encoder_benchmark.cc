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


#include <vector>

#include <benchmark/benchmark.h>

#include "corefcs/corpus/synthetic.h"
#include "corefcs/detector/detector.h"
#include "corefcs/encoder/encoder.h"

namespace corefcs {
namespace {

// One document of roughly `tokens` tokens built from toy sentences.
Document LongDocument(int tokens) {
  ToyCorpusOptions options;
  options.min_sentences = 400;
  options.max_sentences = 400;
  Document doc = GenerateToyCorpus(1, 11, "bench", options)[0];
  const int keep = std::min(tokens, doc.size());
  int last_end = 0;
  for (int e : doc.sentence_ends) {
    if (e < keep) last_end = e;
  }
  doc.tokens.resize(last_end + 1);
  std::erase_if(doc.sentence_ends, [&](int e) { return e > last_end; });
  doc.gold_clusters.clear();
  return doc;
}

EncoderConfig BenchConfig(SegmentStrategy strategy, Bridging bridging) {
  EncoderConfig c;
  c.d_h = 64;
  c.window = 128;
  c.layers = 2;
  c.attention_heads = 4;
  c.mha_heads = 4;
  c.ffn_dim = 128;
  c.strategy = strategy;
  c.bridging = bridging;
  return c;
}

void BM_Encode(benchmark::State& state, SegmentStrategy strategy,
               Bridging bridging) {
  const Document doc = LongDocument(static_cast<int>(state.range(0)));
  nn::Initializer init(1);
  const DocumentEncoder encoder = DocumentEncoder::Create(
      BenchConfig(strategy, bridging), Vocabulary::Build(std::span(&doc, 1)), init);
  for (auto _ : state) benchmark::DoNotOptimize(encoder.Encode(doc));
  state.SetItemsProcessed(state.iterations() * doc.size());
}
BENCHMARK_CAPTURE(BM_Encode, independent, SegmentStrategy::kIndependent,
                  Bridging::kNone)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(BM_Encode, overlapping, SegmentStrategy::kOverlapping,
                  Bridging::kNone)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(BM_Encode, lbm_fc, SegmentStrategy::kIndependent,
                  Bridging::kLbmFc)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(BM_Encode, lbm_mha, SegmentStrategy::kIndependent,
                  Bridging::kLbmMha)->Arg(128)->Arg(512)->Arg(2048);

void BM_EncodeBackward(benchmark::State& state) {
  const Document doc = LongDocument(static_cast<int>(state.range(0)));
  nn::Initializer init(2);
  const DocumentEncoder encoder = DocumentEncoder::Create(
      BenchConfig(SegmentStrategy::kIndependent, Bridging::kLbmMha),
      Vocabulary::Build(std::span(&doc, 1)), init);
  for (auto _ : state) nn::Sum(encoder.Encode(doc)).Backward();
  state.SetItemsProcessed(state.iterations() * doc.size());
}
BENCHMARK(BM_EncodeBackward)->Arg(128)->Arg(512);

void BM_Detect(benchmark::State& state, EndScorer scorer) {
  const Document doc = LongDocument(512);
  const int l_max = static_cast<int>(state.range(0));
  nn::Initializer init(3);
  DetectorConfig config;
  config.end_scorer = scorer;
  config.d_r = 32;
  MentionDetector detector(64, config, init);
  detector.start_mlp.output.bias.mutable_value()(0, 0) = 1.0;
  const nn::Tensor h(nn::Matrix::Random(doc.size(), 64));
  HymrConfig hymr;
  hymr.l_max = l_max;
  for (auto _ : state) benchmark::DoNotOptimize(detector.Detect(doc, h, hymr));
}
BENCHMARK_CAPTURE(BM_Detect, biaffine, EndScorer::kBiaffine)
    ->Arg(1)->Arg(10)->Arg(30)->Arg(kUnboundedSpanLength);
BENCHMARK_CAPTURE(BM_Detect, baseline, EndScorer::kBaseline)
    ->Arg(1)->Arg(10)->Arg(30)->Arg(kUnboundedSpanLength);

}  // namespace
}  // namespace corefcs

BENCHMARK_MAIN();
