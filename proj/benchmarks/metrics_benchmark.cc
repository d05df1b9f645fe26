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


#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "corefcs/metrics/metrics.h"

namespace corefcs {
namespace {

// Random partition of `n` single-token spans into about n / 4 clusters.
SpanPartition RandomPartition(int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, std::max(1, n / 4) - 1);
  SpanPartition p(std::max(1, n / 4));
  for (int i = 0; i < n; ++i) p[pick(rng)].push_back({i, i});
  std::erase_if(p, [](const auto& c) { return c.empty(); });
  return p;
}

template <Score (*Metric)(const SpanPartition&, const SpanPartition&)>
void BM_Metric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpanPartition key = RandomPartition(n, 1);
  const SpanPartition response = RandomPartition(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(Metric(key, response));
  state.SetComplexityN(n);
}
BENCHMARK_TEMPLATE(BM_Metric, Muc)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK_TEMPLATE(BM_Metric, BCubed)->RangeMultiplier(4)->Range(16, 4096);
BENCHMARK_TEMPLATE(BM_Metric, CeafPhi4)->RangeMultiplier(4)->Range(16, 1024);

void BM_MaxWeightAssignment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> weights(static_cast<size_t>(n) * n);
  for (double& w : weights) w = u(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MaxWeightAssignment(weights, n, n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_MaxWeightAssignment)->RangeMultiplier(2)->Range(8, 256)
    ->Complexity(benchmark::oNCubed);

void BM_CorpusEvaluator(benchmark::State& state) {
  std::vector<std::pair<SpanPartition, SpanPartition>> docs;
  for (int i = 0; i < 100; ++i) {
    docs.emplace_back(RandomPartition(60, 2 * i), RandomPartition(60, 2 * i + 1));
  }
  for (auto _ : state) {
    CorpusEvaluator eval;
    for (const auto& [gold, pred] : docs) eval.Add(gold, pred);
    benchmark::DoNotOptimize(eval.Result());
  }
}
BENCHMARK(BM_CorpusEvaluator);

}  // namespace
}  // namespace corefcs

BENCHMARK_MAIN();
