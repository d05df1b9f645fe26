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
#include <vector>

#include <benchmark/benchmark.h>

#include "corefcs/corpus/conll.h"
#include "corefcs/corpus/synthetic.h"
#include "corefcs/orchestrator/config.h"
#include "corefcs/orchestrator/model.h"
#include "corefcs/orchestrator/pipeline.h"

namespace corefcs {
namespace {

void BM_PlantedPipeline(benchmark::State& state) {
  const PipelineConfig config =
      LoadConfig(COREFCS_DATA_DIR "/fixtures/config.json");
  const std::vector<Document> docs =
      ParseConll(config.Resolve(config.data.test));
  const std::unique_ptr<CorefModel> model = LoadModel(config);
  const std::unique_ptr<LlmClient> client =
      state.range(0) ? MakeLlmClient("mock:gold", config, docs) : nullptr;
  const Pipeline pipeline(*model, config, client.get());
  for (auto _ : state) benchmark::DoNotOptimize(pipeline.RunAll(docs));
  state.SetItemsProcessed(state.iterations() * docs.size());
}
BENCHMARK(BM_PlantedPipeline)->ArgName("agent")->Arg(0)->Arg(1);

PipelineConfig ToyConfig() {
  return LoadConfig(COREFCS_DATA_DIR "/toy/config.json");
}

void BM_NeuralPredict(benchmark::State& state) {
  const PipelineConfig config = ToyConfig();
  const std::vector<Document> docs = GenerateToyCorpus(10, 5, "bench");
  const NeuralCorefModel model(config, Vocabulary::Build(docs));
  const std::unique_ptr<LlmClient> client =
      MakeLlmClient("mock:gold", config, docs);
  const Pipeline pipeline(model, config, client.get());
  for (auto _ : state) benchmark::DoNotOptimize(pipeline.RunAll(docs));
  state.SetItemsProcessed(state.iterations() * docs.size());
}
BENCHMARK(BM_NeuralPredict)->Unit(benchmark::kMillisecond);

void BM_TrainingStep(benchmark::State& state) {
  const PipelineConfig config = ToyConfig();
  const std::vector<Document> docs = GenerateToyCorpus(1, 6, "bench");
  const NeuralCorefModel model(config, Vocabulary::Build(docs));
  for (auto _ : state) {
    model.parameters().ZeroGrad();
    model.Loss(docs[0]).total.Backward();
  }
}
BENCHMARK(BM_TrainingStep)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace corefcs

BENCHMARK_MAIN();
