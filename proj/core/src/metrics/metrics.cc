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


#include "corefcs/metrics/metrics.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include <fmt/format.h>

#include "json.hpp"

namespace corefcs {
namespace {

// Span -> cluster index.
std::map<Span, int> Index(const SpanPartition& partition) {
  std::map<Span, int> out;
  for (size_t c = 0; c < partition.size(); ++c) {
    for (const Span& s : partition[c]) out[s] = static_cast<int>(c);
  }
  return out;
}

// Sum over key clusters of (|K| - parts(K)) and (|K| - 1), where parts(K)
// counts the response clusters K is split into, mentions missing from the
// response each being their own part.
std::pair<double, double> MucSide(const SpanPartition& key,
                                  const SpanPartition& response) {
  const std::map<Span, int> where = Index(response);
  double num = 0.0, den = 0.0;
  for (const auto& cluster : key) {
    if (cluster.empty()) continue;
    std::set<int> parts;
    int missing = 0;
    for (const Span& s : cluster) {
      auto it = where.find(s);
      if (it == where.end()) {
        ++missing;
      } else {
        parts.insert(it->second);
      }
    }
    const double size = static_cast<double>(cluster.size());
    num += size - static_cast<double>(parts.size() + missing);
    den += size - 1.0;
  }
  return {num, den};
}

// Sum over key mentions of |K_m intersect R_m| / |K_m|, and the mention count.
std::pair<double, double> BCubedSide(const SpanPartition& key,
                                     const SpanPartition& response) {
  const std::map<Span, int> where = Index(response);
  double num = 0.0, den = 0.0;
  for (const auto& cluster : key) {
    const std::set<Span> members(cluster.begin(), cluster.end());
    for (const Span& s : members) {
      den += 1.0;
      auto it = where.find(s);
      if (it == where.end()) continue;
      int overlap = 0;
      for (const Span& r : response[it->second]) overlap += members.count(r);
      num += static_cast<double>(overlap) / static_cast<double>(members.size());
    }
  }
  return {num, den};
}

nlohmann::ordered_json ScoreJson(const Score& s) {
  nlohmann::ordered_json j;
  j["precision"] = s.precision;
  j["recall"] = s.recall;
  j["f1"] = s.f1;
  return j;
}

}  // namespace

double F1(double precision, double recall) {
  return precision + recall > 0.0
             ? 2.0 * precision * recall / (precision + recall)
             : 0.0;
}

ScoreCounts& ScoreCounts::operator+=(const ScoreCounts& other) {
  p_num += other.p_num;
  p_den += other.p_den;
  r_num += other.r_num;
  r_den += other.r_den;
  return *this;
}

Score ScoreCounts::ToScore() const {
  Score s;
  s.precision = p_den > 0.0 ? p_num / p_den : 0.0;
  s.recall = r_den > 0.0 ? r_num / r_den : 0.0;
  s.f1 = F1(s.precision, s.recall);
  return s;
}

ScoreCounts MucCounts(const SpanPartition& gold, const SpanPartition& pred) {
  ScoreCounts c;
  std::tie(c.r_num, c.r_den) = MucSide(gold, pred);
  std::tie(c.p_num, c.p_den) = MucSide(pred, gold);
  return c;
}

ScoreCounts BCubedCounts(const SpanPartition& gold,
                         const SpanPartition& pred) {
  ScoreCounts c;
  std::tie(c.r_num, c.r_den) = BCubedSide(gold, pred);
  std::tie(c.p_num, c.p_den) = BCubedSide(pred, gold);
  return c;
}

ScoreCounts CeafPhi4Counts(const SpanPartition& gold,
                           const SpanPartition& pred) {
  ScoreCounts c;
  c.p_den = static_cast<double>(pred.size());
  c.r_den = static_cast<double>(gold.size());
  if (gold.empty() || pred.empty()) return c;
  const int rows = static_cast<int>(gold.size());
  const int cols = static_cast<int>(pred.size());
  std::vector<double> phi(static_cast<size_t>(rows) * cols, 0.0);
  for (int g = 0; g < rows; ++g) {
    const std::set<Span> gs(gold[g].begin(), gold[g].end());
    for (int p = 0; p < cols; ++p) {
      const std::set<Span> ps(pred[p].begin(), pred[p].end());
      int common = 0;
      for (const Span& s : ps) common += gs.count(s);
      if (common > 0) {
        phi[static_cast<size_t>(g) * cols + p] =
            2.0 * common / static_cast<double>(gs.size() + ps.size());
      }
    }
  }
  const std::vector<int> match = MaxWeightAssignment(phi, rows, cols);
  double total = 0.0;
  for (int g = 0; g < rows; ++g) {
    if (match[g] >= 0) total += phi[static_cast<size_t>(g) * cols + match[g]];
  }
  c.p_num = total;
  c.r_num = total;
  return c;
}

ScoreCounts MentionCounts(std::span<const Span> gold,
                          std::span<const Span> pred) {
  const std::set<Span> gs(gold.begin(), gold.end());
  const std::set<Span> ps(pred.begin(), pred.end());
  double common = 0.0;
  for (const Span& s : ps) common += static_cast<double>(gs.count(s));
  return {common, static_cast<double>(ps.size()), common,
          static_cast<double>(gs.size())};
}

Score Muc(const SpanPartition& gold, const SpanPartition& pred) {
  return MucCounts(gold, pred).ToScore();
}
Score BCubed(const SpanPartition& gold, const SpanPartition& pred) {
  return BCubedCounts(gold, pred).ToScore();
}
Score CeafPhi4(const SpanPartition& gold, const SpanPartition& pred) {
  return CeafPhi4Counts(gold, pred).ToScore();
}
Score MentionPrf(std::span<const Span> gold, std::span<const Span> pred) {
  return MentionCounts(gold, pred).ToScore();
}

double AvgF1(const Score& muc, const Score& b_cubed, const Score& ceaf) {
  return (muc.f1 + b_cubed.f1 + ceaf.f1) / 3.0;
}

std::vector<int> MaxWeightAssignment(const std::vector<double>& weights,
                                     int rows, int cols) {
  const int n = std::max(rows, cols);
  if (n == 0) return {};
  // Minimize cost = max_w - w on the zero-padded square matrix. 1-based
  // potentials formulation.
  double max_w = 0.0;
  for (double w : weights) max_w = std::max(max_w, w);
  auto cost = [&](int i, int j) {
    const double w = (i < rows && j < cols)
                         ? weights[static_cast<size_t>(i) * cols + j]
                         : 0.0;
    return max_w - w;
  };
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> out(rows, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] - 1 < rows && j - 1 < cols) out[p[j] - 1] = j - 1;
  }
  return out;
}

SpanPartition DropSingletons(const SpanPartition& partition) {
  SpanPartition out;
  for (const auto& c : partition) {
    if (c.size() > 1) out.push_back(c);
  }
  return out;
}

void CorpusEvaluator::Add(const SpanPartition& gold,
                          const SpanPartition& pred) {
  muc_ += MucCounts(gold, pred);
  b_cubed_ += BCubedCounts(gold, pred);
  ceaf_ += CeafPhi4Counts(gold, pred);
  std::vector<Span> gs, ps;
  for (const auto& c : gold) gs.insert(gs.end(), c.begin(), c.end());
  for (const auto& c : pred) ps.insert(ps.end(), c.begin(), c.end());
  mention_ += MentionCounts(gs, ps);
  ++documents_;
}

CorpusScores CorpusEvaluator::Result() const {
  CorpusScores s;
  s.muc = muc_.ToScore();
  s.b_cubed = b_cubed_.ToScore();
  s.ceaf = ceaf_.ToScore();
  s.mention = mention_.ToScore();
  s.avg_f1 = AvgF1(s.muc, s.b_cubed, s.ceaf);
  return s;
}

std::string FormatScoreTable(const CorpusScores& scores) {
  std::string out = fmt::format("{:<10}{:>8}{:>8}{:>8}\n", "metric", "P", "R",
                                "F1");
  auto row = [&](const char* name, const Score& s) {
    out += fmt::format("{:<10}{:>8.2f}{:>8.2f}{:>8.2f}\n", name,
                       100 * s.precision, 100 * s.recall, 100 * s.f1);
  };
  row("MUC", scores.muc);
  row("B3", scores.b_cubed);
  row("CEAFphi4", scores.ceaf);
  row("Mention", scores.mention);
  out += fmt::format("{:<10}{:>24.2f}\n", "Avg.F1", 100 * scores.avg_f1);
  return out;
}

std::string ScoresToJson(const CorpusScores& scores) {
  nlohmann::ordered_json j;
  j["muc"] = ScoreJson(scores.muc);
  j["b_cubed"] = ScoreJson(scores.b_cubed);
  j["ceaf_phi4"] = ScoreJson(scores.ceaf);
  j["mention"] = ScoreJson(scores.mention);
  j["avg_f1"] = scores.avg_f1;
  return j.dump();
}

}  // namespace corefcs
