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


// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "corefcs/agent/prompts.h"
#include "corefcs/base/error.h"
#include "corefcs/corpus/conll.h"
#include "corefcs/detector/detector.h"
#include "corefcs/encoder/encoder.h"
#include "corefcs/metrics/metrics.h"
#include "corefcs/orchestrator/config.h"
#include "corefcs/orchestrator/model.h"
#include "corefcs/orchestrator/pipeline.h"
#include "corefcs/orchestrator/trainer.h"
#include "corefcs/selectors/selectors.h"
#include "testing/generators.h"
#include "testing/gradcheck.h"
#include "testing/llm_replies.h"

namespace corefcs {
namespace {

namespace fs = std::filesystem;
using nn::Matrix;
using nn::Tensor;
using testing::RandomMatrix;
using testing::UniformInt;
using testing::UniformReal;

// A criterion fills `detail` and returns whether it holds.
using Criterion = std::function<bool(std::string& detail)>;

bool Near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool ScoreIs(const Score& s, double p, double r, double f1) {
  return Near(s.precision, p, 1e-9) && Near(s.recall, r, 1e-9) &&
         Near(s.f1, f1, 1e-9);
}

// ---------------------------------------------------------------------------
// A1: metric fixtures and CEAF alignment.

Span Letter(char c) { return {c - 'a', c - 'a'}; }

SpanPartition Letters(std::initializer_list<const char*> clusters) {
  SpanPartition out;
  for (const char* c : clusters) {
    std::vector<Span> cluster;
    for (const char* p = c; *p; ++p) cluster.push_back(Letter(*p));
    out.push_back(cluster);
  }
  return out;
}

double Phi4(const std::vector<Span>& a, const std::vector<Span>& b) {
  const std::set<Span> as(a.begin(), a.end());
  double common = 0;
  for (const Span& s : b) common += static_cast<double>(as.count(s));
  return 2 * common / static_cast<double>(a.size() + b.size());
}

double BruteForceCeafF1(const SpanPartition& key, const SpanPartition& resp) {
  if (key.empty() || resp.empty()) return 0.0;
  const bool key_small = key.size() <= resp.size();
  const SpanPartition& small = key_small ? key : resp;
  const SpanPartition& large = key_small ? resp : key;
  std::vector<int> perm(large.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0;
  do {
    double total = 0;
    for (size_t i = 0; i < small.size(); ++i) {
      total += Phi4(small[i], large[perm[i]]);
    }
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return F1(best / static_cast<double>(resp.size()),
            best / static_cast<double>(key.size()));
}

bool MetricFixtures(std::string& detail) {
  bool ok = ScoreIs(Muc(Letters({"abc"}), Letters({"ab", "c"})), 1.0, 0.5,
                    2.0 / 3.0);
  ok &= ScoreIs(BCubed(Letters({"ab", "c"}), Letters({"abc"})), 5.0 / 9.0, 1.0,
                5.0 / 7.0);
  ok &= ScoreIs(CeafPhi4(Letters({"ab", "cd"}), Letters({"ac", "bd"})), 0.5,
                0.5, 0.5);
  if (!ok) {
    detail = "hand-derived fixture mismatch";
    return false;
  }
  std::mt19937_64 rng(2026);
  const std::vector<Span> universe = testing::SpanUniverse(12);
  for (int trial = 0; trial < 200; ++trial) {
    const SpanPartition key =
        testing::RandomPartition(rng, universe, UniformInt(rng, 1, 6));
    const SpanPartition resp =
        testing::RandomPartition(rng, universe, UniformInt(rng, 1, 6));
    const double got = CeafPhi4(key, resp).f1;
    const double want = BruteForceCeafF1(key, resp);
    if (!Near(got, want, 1e-9)) {
      detail = fmt::format("instance {}: ceaf {} vs brute force {}", trial, got,
                           want);
      return false;
    }
  }
  detail = "3 fixtures, 200 brute-force alignments";
  return true;
}

// ---------------------------------------------------------------------------
// A2: Avg.F1 arithmetic on published result rows.

bool AvgF1Rows(std::string& detail) {
  struct Row {
    double muc, b3, ceaf, avg;
  };
  const Row rows[] = {{88.2, 83.6, 81.0, 84.3}, {88.0, 82.8, 79.9, 83.6},
                      {91.2, 84.9, 81.8, 86.0}, {89.6, 84.1, 81.0, 84.9},
                      {90.8, 84.6, 81.6, 85.7}, {85.3, 78.1, 75.3, 79.6}};
  for (const Row& r : rows) {
    Score muc, b3, ceaf;
    muc.f1 = r.muc;
    b3.f1 = r.b3;
    ceaf.f1 = r.ceaf;
    const double got = std::round(10 * AvgF1(muc, b3, ceaf)) / 10;
    if (!Near(got, r.avg, 1e-9)) {
      detail = fmt::format("({}, {}, {}) gave {} not {}", r.muc, r.b3, r.ceaf,
                           got, r.avg);
      return false;
    }
  }
  detail = "6 rows";
  return true;
}

// ---------------------------------------------------------------------------
// A3: toy end-to-end training.

bool ToyTraining(std::string& detail) {
  const PipelineConfig config = LoadConfig(COREFCS_DATA_DIR "/toy/config.json");
  const std::vector<Document> train = ParseConll(config.Resolve(config.data.train));
  const std::vector<Document> val = ParseConll(config.Resolve(config.data.val));
  NeuralCorefModel model(config, Vocabulary::Build(train));
  const TrainResult result = RunTrain(model, train, val);
  const CorpusScores scores = EvaluateModel(model, train, false);
  detail = fmt::format(
      "{} docs, {} epochs (best {}), mention F1 {:.3f}, Avg.F1 {:.3f}",
      train.size(), result.epochs_run, result.best_epoch, scores.mention.f1,
      scores.avg_f1);
  return result.epochs_run <= 200 && scores.mention.f1 >= 0.9 &&
         scores.avg_f1 >= 0.8;
}

// ---------------------------------------------------------------------------
// A4: span window properties of detection.

bool SpanWindowProperties(std::string& detail) {
  const int kLimits[] = {0, 1, 2, 3, 5, 8, kUnboundedSpanLength};
  std::mt19937_64 rng(4);
  int emitted = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Document doc = testing::RandomDocument(rng);
    nn::Initializer init(trial);
    DetectorConfig dc;
    dc.end_scorer = trial % 2 ? EndScorer::kBiaffine : EndScorer::kBaseline;
    dc.d_r = 4;
    MentionDetector det(6, dc, init);
    det.start_mlp.output.bias.mutable_value()(0, 0) = 1.0;
    const Tensor h(RandomMatrix(rng, doc.size(), 6));
    HymrConfig hymr;
    hymr.threshold = UniformReal(rng, 0.2, 0.8);
    std::set<Span> previous;
    for (int l_max : kLimits) {
      hymr.l_max = l_max;
      std::set<Span> found;
      for (const Mention& m : det.Detect(doc, h, hymr)) {
        if (m.end - m.start > l_max ||
            doc.SentenceOf(m.start) != doc.SentenceOf(m.end)) {
          detail = fmt::format("doc {}: span [{}, {}] at l_max {}", trial,
                               m.start, m.end, l_max);
          return false;
        }
        found.insert(m.span());
      }
      if (!std::includes(found.begin(), found.end(), previous.begin(),
                         previous.end())) {
        detail = fmt::format("doc {}: mentions lost when l_max grew to {}",
                             trial, l_max);
        return false;
      }
      previous = std::move(found);
    }
    emitted += static_cast<int>(previous.size());
  }
  detail = fmt::format("1000 docs, {} unbounded mentions", emitted);
  return emitted > 0;
}

// ---------------------------------------------------------------------------
// A5: gradient checks.

bool GradientChecks(std::string& detail) {
  constexpr double kTol = 1e-4;
  double worst = 0.0;
  std::string worst_name;
  auto check = [&](const std::string& name,
                   const std::function<Tensor()>& loss, const Tensor& p) {
    const double err = testing::GradientRelativeError(loss, p);
    if (err >= worst) {
      worst = err;
      worst_name = name;
    }
  };

  std::mt19937_64 rng(5);
  nn::Initializer init(4);
  DetectorConfig dc;
  dc.end_scorer = EndScorer::kBiaffine;
  dc.d_r = 3;
  MentionDetector det(4, dc, init);
  det.fc1.bias.mutable_value() = RandomMatrix(rng, 1, 4, 0.3);
  det.w.bias.mutable_value() = RandomMatrix(rng, 1, 3, 0.3);
  const Tensor hs(RandomMatrix(rng, 3, 4), true);
  const Tensor he(RandomMatrix(rng, 3, 4), true);
  const Matrix weights = RandomMatrix(rng, 3, 3);
  auto biaffine = [&] {
    return nn::WeightedSum(det.BiaffineScores(hs, he), weights);
  };
  nn::ParameterSet det_params;
  det.RegisterParameters(det_params);
  check("biaffine/start", biaffine, hs);
  check("biaffine/end", biaffine, he);
  for (const Tensor& p : {det.u, det.w.weight, det.w.bias, det.fc1.weight,
                          det.fc1.bias, det.fc2.weight, det.fc2.bias}) {
    check("biaffine/param", biaffine, p);
  }

  auto bridge = [&](const BridgeModule& lbm, const std::string& name) {
    constexpr int kDim = 8;
    const Tensor h_sep(RandomMatrix(rng, 1, kDim), true);
    const Tensor h_next(RandomMatrix(rng, 4, kDim), true);
    const Matrix w = RandomMatrix(rng, 4, kDim);
    auto loss = [&] { return nn::WeightedSum(lbm.Apply(h_sep, h_next), w); };
    check(name + "/sep", loss, h_sep);
    check(name + "/next", loss, h_next);
    nn::ParameterSet set;
    lbm.RegisterParameters(set);
    for (const nn::NamedParameter& p : set.params()) {
      Tensor t = p.tensor;
      t.mutable_value() += RandomMatrix(rng, t.value().rows(), t.value().cols(),
                                        0.1);
      check(name + "/" + p.name, loss, t);
    }
  };
  nn::Initializer bridge_init(6);
  bridge(LbmFc(8, bridge_init), "lbm_fc");
  bridge(LbmMha(8, 2, bridge_init), "lbm_mha");
  detail = fmt::format("max relative error {:.2e} ({})", worst, worst_name);
  return worst < kTol;
}

// ---------------------------------------------------------------------------
// A6: filter arithmetic.

bool FilterMath(std::string& detail) {
  const std::vector<double> example = {0.9, 0.5};
  const double conf = ClusterConfidence(example, 1e-3);
  if (!Near(conf, 0.69992, 1e-12)) {
    detail = fmt::format("confidence {:.15f}", conf);
    return false;
  }

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = UniformInt(rng, 2, 8);
    std::vector<std::vector<double>> probs(n);
    std::vector<double> means(n), spreads(n);
    for (int i = 0; i < n; ++i) {
      probs[i].resize(UniformInt(rng, 1, 6));
      for (double& p : probs[i]) p = UniformReal(rng, 0.0, 1.0);
      means[i] = std::accumulate(probs[i].begin(), probs[i].end(), 0.0) /
                 static_cast<double>(probs[i].size());
      spreads[i] = 0;
      for (double p : probs[i]) spreads[i] += (means[i] - p) * (means[i] - p);
    }
    std::vector<double> sorted = means;
    std::sort(sorted.begin(), sorted.end());
    double gap = 1.0;
    for (int i = 1; i < n; ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
    const double max_spread = *std::max_element(spreads.begin(), spreads.end());
    if (gap <= 1e-9 || max_spread == 0.0) {
      --trial;
      continue;
    }
    const double rho = UniformReal(rng, 0.0, 0.99) * gap / max_spread;
    std::vector<int> by_mean(n), by_conf(n);
    std::iota(by_mean.begin(), by_mean.end(), 0);
    std::iota(by_conf.begin(), by_conf.end(), 0);
    std::sort(by_mean.begin(), by_mean.end(),
              [&](int a, int b) { return means[a] < means[b]; });
    std::sort(by_conf.begin(), by_conf.end(), [&](int a, int b) {
      return ClusterConfidence(probs[a], rho) < ClusterConfidence(probs[b], rho);
    });
    if (by_mean != by_conf) {
      detail = fmt::format("instance {}: ranking differs from mean order", trial);
      return false;
    }
  }

  for (int n = 0; n <= 20; ++n) {
    for (int tenths = 0; tenths <= 10; tenths += 2) {
      const double eta = tenths / 10.0;
      const int want = (tenths * n + 9) / 10;  // exact ceil(eta * n)
      std::vector<Mention> mentions;
      std::vector<Cluster> clusters;
      Document doc;
      for (int i = 0; i < n; ++i) {
        doc.tokens.push_back("dog");
        doc.tokens.push_back("cat");
      }
      doc.sentence_ends = {std::max(0, 2 * n - 1)};
      for (int i = 0; i < n; ++i) {
        Mention m = doc.MakeMention(2 * i, 2 * i + 1);
        m.p_end = 0.5 + 0.01 * i;
        mentions.push_back(m);
        Cluster c;
        c.mentions = {doc.MakeMention(2 * i, 2 * i),
                      doc.MakeMention(2 * i + 1, 2 * i + 1)};
        c.pair_probs = {0.5 + 0.01 * i};
        clusters.push_back(c);
      }
      FilterConfig config;
      config.eta1 = eta;
      config.eta2 = eta;
      const int got_m =
          static_cast<int>(SelectMentionsForCheck(mentions, config).to_check.size());
      const int got_c =
          static_cast<int>(SelectClustersForCheck(clusters, config).to_check.size());
      if (got_m != want || got_c != want) {
        detail = fmt::format("N={} eta={}: {} mentions, {} clusters, want {}",
                             n, eta, got_m, got_c, want);
        return false;
      }
    }
  }
  detail = "confidence 0.69992, 500 ranking instances, 126 workload counts";
  return true;
}

// ---------------------------------------------------------------------------
// A7: agent stages against a gold-backed oracle.

std::multiset<Span> SpansOf(const std::vector<Mention>& mentions) {
  std::multiset<Span> out;
  for (const Mention& m : mentions) out.insert(m.span());
  return out;
}

bool AgentWithOracle(std::string& detail) {
  const PipelineConfig config =
      LoadConfig(COREFCS_DATA_DIR "/fixtures/config.json");
  const std::vector<Document> docs = ParseConll(config.Resolve(config.data.test));
  const std::unique_ptr<CorefModel> model = LoadModel(config);
  const std::unique_ptr<LlmClient> gold = MakeLlmClient("mock:gold", config, docs);
  const std::unique_ptr<LlmClient> yes = MakeLlmClient("mock:yes", config, docs);
  const auto plain = Pipeline(*model, config, nullptr).RunAll(docs);
  const auto with_gold = Pipeline(*model, config, gold.get()).RunAll(docs);
  const auto with_yes = Pipeline(*model, config, yes.get()).RunAll(docs);

  int invalid = 0, mixed = 0;
  AgentStats stats;
  for (size_t i = 0; i < docs.size(); ++i) {
    const Document& doc = docs[i];
    const DocumentResult& r = with_gold[i];
    std::map<Span, int> entity;
    for (size_t c = 0; c < doc.gold_clusters.size(); ++c) {
      for (const Span& s : doc.gold_clusters[c].spans()) {
        entity[s] = static_cast<int>(c);
      }
    }
    auto entities_of = [&](const std::vector<Span>& spans) {
      std::set<int> out;
      for (const Span& s : spans) {
        auto it = entity.find(s);
        out.insert(it == entity.end() ? -1 : it->second);
      }
      return out;
    };

    std::multiset<Span> planted_invalid, removed = SpansOf(r.detected);
    for (const Mention& m : r.detected) {
      if (!entity.count(m.span())) planted_invalid.insert(m.span());
    }
    for (const Span& s : SpansOf(r.clustered)) removed.erase(removed.find(s));
    if (removed != planted_invalid) {
      detail = fmt::format("{}: removed {} mentions, {} are invalid",
                           doc.doc_id, removed.size(), planted_invalid.size());
      return false;
    }
    int doc_mixed = 0;
    for (const Cluster& c : r.proposed) {
      if (entities_of(c.spans()).size() > 1) ++doc_mixed;
    }
    if (r.stats.clusters_split != doc_mixed) {
      detail = fmt::format("{}: split {} clusters, {} are mixed", doc.doc_id,
                           r.stats.clusters_split, doc_mixed);
      return false;
    }
    std::multiset<Span> predicted;
    for (const auto& cluster : r.prediction.clusters) {
      if (entities_of(cluster).size() != 1) {
        detail = fmt::format("{}: an output cluster is still mixed", doc.doc_id);
        return false;
      }
      predicted.insert(cluster.begin(), cluster.end());
    }
    if (predicted != SpansOf(r.clustered)) {
      detail = fmt::format("{}: mentions not conserved", doc.doc_id);
      return false;
    }
    if (with_yes[i].prediction != plain[i].prediction) {
      detail = fmt::format("{}: all-yes oracle changed the output", doc.doc_id);
      return false;
    }
    invalid += static_cast<int>(planted_invalid.size());
    mixed += doc_mixed;
    stats += r.stats;
  }
  const double f1_plain = ScoreResults(docs, plain, false).avg_f1;
  const double f1_gold = ScoreResults(docs, with_gold, false).avg_f1;
  detail = fmt::format(
      "removed {}/{} invalid mentions, split {}/{} mixed clusters, Avg.F1 "
      "{:.2f} -> {:.2f}",
      stats.mentions_removed, invalid, stats.clusters_split, mixed,
      100 * f1_plain, 100 * f1_gold);
  return invalid > 0 && mixed > 0 && f1_gold >= f1_plain;
}

// ---------------------------------------------------------------------------
// A8: reply parsing on verbatim model outputs.

bool ReplyParsing(std::string& detail) {
  using namespace testing::replies;  // NOLINT
  const Verdict yes = ParseVerdict(kYesMentionReply);
  bool ok = yes.value == VerdictValue::kYes &&
            yes.reason ==
                "The mention [Jesus] is a single-word proper noun with correct "
                "bracket placement and no extraneous punctuation.";
  ok &= ParseVerdict(kNoMentionReply).value == VerdictValue::kNo;
  ok &= ParseVerdict(kNoDotMentionReply).value == VerdictValue::kNo;
  ok &= ParseVerdict(kNoClusterReply).value == VerdictValue::kNo;
  const Regrouping eight = ParseRegrouping(kEightWayRegrouping, 8);
  ok &= eight.ok() && eight.groups == std::vector<std::vector<int>>{
                                          {1, 3, 6}, {2, 4, 5, 7, 8}};
  const Regrouping eleven = ParseRegrouping(kElevenWayRegrouping, 11);
  ok &= eleven.ok() && eleven.groups == std::vector<std::vector<int>>{
                                            {1, 5, 6, 7, 9}, {2, 8},
                                            {3, 4, 10, 11}};
  const Regrouping failed = ParseRegrouping(kCorrectionFailed, 4);
  ok &= !failed.ok() && failed.groups.empty() &&
        *failed.failure_reason ==
            "Insufficient context to determine the entity reference of #3";
  detail = "4 verdicts, 2 regroupings, 1 correction failure";
  return ok;
}

// ---------------------------------------------------------------------------
// A9: byte-identical predict runs.

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool RunPredict(const fs::path& config, const fs::path& input,
                const fs::path& out, int threads) {
  const std::string cmd = fmt::format(
      "\"{}\" --log-level warn predict --config \"{}\" --input \"{}\" "
      "--output \"{}\" --threads {}",
      COREFCS_CLI_PATH, config.string(), input.string(), out.string(), threads);
  return std::system(cmd.c_str()) == 0;
}

bool DeterministicPredict(std::string& detail) {
  const fs::path dir = fs::temp_directory_path() /
                       fmt::format("corefcs_acceptance_{}", ::getpid());
  fs::create_directories(dir);

  // An untrained neural model, saved once and loaded by each run.
  const PipelineConfig toy = LoadConfig(COREFCS_DATA_DIR "/toy/config.json");
  const std::vector<Document> val = ParseConll(toy.Resolve(toy.data.val));
  NeuralCorefModel(toy, Vocabulary::Build(val)).Save((dir / "model.ckpt").string());
  PipelineConfig neural = toy;
  neural.model.checkpoint = (dir / "model.ckpt").string();
  neural.hymr.threshold = 0.3;
  neural.clusterer.threshold = 0.3;
  {
    std::ofstream out(dir / "neural.json");
    out << SerializeConfig(neural);
  }

  struct Case {
    std::string name;
    fs::path config, input;
  };
  const Case cases[] = {
      {"planted", COREFCS_DATA_DIR "/fixtures/config.json",
       COREFCS_DATA_DIR "/fixtures/planted.conll"},
      {"neural", dir / "neural.json", toy.Resolve(toy.data.val)},
  };
  bool ok = true;
  std::vector<std::string> notes;
  for (const Case& c : cases) {
    const fs::path a = dir / (c.name + "_a.jsonl");
    const fs::path b = dir / (c.name + "_b.jsonl");
    if (!RunPredict(c.config, c.input, a, 1) ||
        !RunPredict(c.config, c.input, b, 2)) {
      notes.push_back(c.name + " predict failed");
      ok = false;
      continue;
    }
    const std::string pa = Slurp(a), pb = Slurp(b);
    const std::string la = Slurp(a.string() + ".audit.jsonl");
    const std::string lb = Slurp(b.string() + ".audit.jsonl");
    const bool same = !pa.empty() && pa == pb && la == lb;
    ok &= same;
    notes.push_back(fmt::format("{} {} ({} bytes, audit {} bytes)", c.name,
                                same ? "identical" : "differs", pa.size(),
                                la.size()));
  }
  fs::remove_all(dir);
  detail = fmt::format("{}; {}", notes[0], notes.size() > 1 ? notes[1] : "");
  return ok;
}

struct Entry {
  const char* id;
  const char* title;
  double budget_seconds;
  Criterion run;
};

int Main() {
  const Entry entries[] = {
      {"A1", "metric fixtures", 10, MetricFixtures},
      {"A2", "Avg.F1 arithmetic", 10, AvgF1Rows},
      {"A3", "toy end-to-end training", 300, ToyTraining},
      {"A4", "span window properties", 30, SpanWindowProperties},
      {"A5", "gradient checks", 30, GradientChecks},
      {"A6", "filter arithmetic", 10, FilterMath},
      {"A7", "agent with gold oracle", 30, AgentWithOracle},
      {"A8", "reply parsing", 10, ReplyParsing},
      {"A9", "deterministic predict", 60, DeterministicPredict},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = e.run(detail);
    } catch (const std::exception& ex) {
      detail = fmt::format("threw: {}", ex.what());
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    if (ok && seconds > e.budget_seconds) {
      ok = false;
      detail += fmt::format("; over the {:.0f} s budget", e.budget_seconds);
    }
    if (!ok) ++failures;
    fmt::print("{} {} {} ({:.1f} s): {}\n", e.id, ok ? "PASS" : "FAIL", e.title,
               seconds, detail);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace corefcs

int main() { return corefcs::Main(); }
