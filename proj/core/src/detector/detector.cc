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


#include "corefcs/detector/detector.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "corefcs/base/error.h"
#include "corefcs/corpus/segment.h"

namespace corefcs {
namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<int> Column(std::span<const SpanCandidate> pairs, bool starts) {
  std::vector<int> out;
  out.reserve(pairs.size());
  for (const SpanCandidate& p : pairs) out.push_back(starts ? p.start : p.end);
  return out;
}

}  // namespace

void HymrConfig::Validate() const {
  if (l_max < 0) throw ConfigError(fmt::format("l_max {} is negative", l_max));
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError(
        fmt::format("detection threshold {} outside (0, 1)", threshold));
  }
}

Span CandidateEndRange(int t_s, const Document& doc, const HymrConfig& config) {
  const int limit = std::min(config.l_max, EosDistance(doc, t_s));
  return {t_s, t_s + limit};
}

EndScorer ParseEndScorer(std::string_view name) {
  if (name == "baseline") return EndScorer::kBaseline;
  if (name == "biaffine") return EndScorer::kBiaffine;
  throw ConfigError(fmt::format("unknown end scorer '{}'", name));
}

std::string_view EndScorerName(EndScorer scorer) {
  return scorer == EndScorer::kBaseline ? "baseline" : "biaffine";
}

void DetectorConfig::Validate() const {
  if (d_r <= 0) throw ConfigError("detector d_r must be positive");
  if (start_hidden < 0) throw ConfigError("start_hidden must be >= 0");
}

MentionDetector::MentionDetector(int d_h, const DetectorConfig& config,
                                 nn::Initializer& init)
    : d_h_(d_h), config_(config) {
  config.Validate();
  const int hidden = config.start_hidden > 0 ? config.start_hidden : d_h;
  start_mlp = nn::Mlp(d_h, hidden, init);
  if (config.end_scorer == EndScorer::kBiaffine) {
    fc1 = nn::Linear(d_h, d_h, init);
    fc2 = nn::Linear(d_h, d_h, init);
    u = nn::Tensor(init.Normal(d_h, static_cast<Eigen::Index>(config.d_r) * d_h,
                               1.0 / d_h),
                   true);
    w = nn::Linear(2 * d_h, config.d_r, init);
    end_mlp = nn::Mlp(config.d_r, config.d_r, init);
  } else {
    end_mlp = nn::Mlp(2 * d_h, config.d_r, init);
  }
}

nn::Tensor MentionDetector::StartLogits(const nn::Tensor& h) const {
  return start_mlp.Forward(h);
}

std::vector<double> MentionDetector::StartProbs(const nn::Tensor& h) const {
  const nn::Matrix z = StartLogits(h).value();
  std::vector<double> out(z.rows());
  for (Eigen::Index i = 0; i < z.rows(); ++i) out[i] = Sigmoid(z(i, 0));
  return out;
}

nn::Tensor MentionDetector::BiaffineScores(const nn::Tensor& hs_dup,
                                           const nn::Tensor& he) const {
  if (config_.end_scorer != EndScorer::kBiaffine) {
    throw ConfigError("biaffine scores requested from a baseline detector");
  }
  if (hs_dup.rows() != he.rows() || hs_dup.cols() != d_h_ ||
      he.cols() != d_h_) {
    throw ShapeError(fmt::format("biaffine: starts {}x{}, ends {}x{}, d_h {}",
                                 hs_dup.rows(), hs_dup.cols(), he.rows(),
                                 he.cols(), d_h_));
  }
  const nn::Tensor xs = fc1.Forward(hs_dup);
  const nn::Tensor xe = fc2.Forward(he);
  const nn::Tensor both[] = {xs, xe};
  return nn::Add(nn::RowBilinear(xs, u, xe, config_.d_r),
                 w.Forward(nn::ConcatCols(both)));
}

nn::Tensor MentionDetector::EndLogits(
    const nn::Tensor& h, std::span<const SpanCandidate> pairs) const {
  const std::vector<int> starts = Column(pairs, true);
  const std::vector<int> ends = Column(pairs, false);
  if (config_.end_scorer == EndScorer::kBiaffine) {
    // Rows are projected once and gathered per pair. The start side of the
    // bilinear form is contracted once per run of pairs sharing a start.
    const nn::Tensor xs_all = fc1.Forward(h);
    std::vector<int> distinct = starts;
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    std::vector<int> group(starts.size());
    for (size_t i = 0, j = 0; i < starts.size(); ++i) {
      if (distinct[j] != starts[i]) ++j;
      group[i] = static_cast<int>(j);
    }
    const nn::Tensor xs = nn::GatherRows(xs_all, starts);
    const nn::Tensor xe = nn::GatherRows(fc2.Forward(h), ends);
    const nn::Tensor both[] = {xs, xe};
    const nn::Tensor s =
        nn::Add(nn::GroupedBilinear(nn::GatherRows(xs_all, distinct), u, xe,
                                    group, config_.d_r),
                w.Forward(nn::ConcatCols(both)));
    return end_mlp.Forward(s);
  }
  const nn::Tensor both[] = {nn::GatherRows(h, starts),
                             nn::GatherRows(h, ends)};
  return end_mlp.Forward(nn::ConcatCols(both));
}

std::vector<double> MentionDetector::EndProbs(
    int t_s, std::span<const int> candidate_ends, const nn::Tensor& h) const {
  std::vector<SpanCandidate> pairs;
  for (int e : candidate_ends) pairs.push_back({t_s, e});
  if (pairs.empty()) return {};
  const nn::Matrix z = EndLogits(h, pairs).value();
  std::vector<double> out(z.rows());
  for (Eigen::Index i = 0; i < z.rows(); ++i) out[i] = Sigmoid(z(i, 0));
  return out;
}

std::vector<Mention> MentionDetector::Detect(const Document& doc,
                                             const nn::Tensor& h,
                                             const HymrConfig& hymr) const {
  if (h.rows() != doc.size()) {
    throw ShapeError(fmt::format("{}: {} hidden rows for {} tokens", doc.doc_id,
                                 h.rows(), doc.size()));
  }
  const std::vector<double> p_start = StartProbs(h);
  std::vector<SpanCandidate> pairs;
  for (int t = 0; t < doc.size(); ++t) {
    if (p_start[t] < hymr.threshold) continue;
    const Span range = CandidateEndRange(t, doc, hymr);
    for (int e = range.start; e <= range.end; ++e) pairs.push_back({t, e});
  }
  std::vector<Mention> out;
  if (pairs.empty()) return out;
  const nn::Matrix z = EndLogits(h, pairs).value();
  for (size_t i = 0; i < pairs.size(); ++i) {
    const double p_end = Sigmoid(z(static_cast<Eigen::Index>(i), 0));
    if (p_end < hymr.threshold) continue;
    Mention m = doc.MakeMention(pairs[i].start, pairs[i].end);
    m.p_start = p_start[pairs[i].start];
    m.p_end = p_end;
    out.push_back(std::move(m));
  }
  // Pairs were generated in (start, end) order already.
  return out;
}

nn::Tensor MentionDetector::Loss(const Document& doc, const nn::Tensor& h,
                                 const HymrConfig& hymr) const {
  const int m = doc.size();
  const std::vector<Span> gold = doc.GoldMentionSpans();
  const std::set<Span> gold_set(gold.begin(), gold.end());

  nn::Matrix start_targets = nn::Matrix::Zero(m, 1);
  for (const Span& s : gold) start_targets(s.start, 0) = 1.0;
  const nn::Tensor start_logits = StartLogits(h);
  nn::Tensor total = nn::BceWithLogitsSum(start_logits, start_targets);
  int labels = m;

  std::vector<SpanCandidate> pairs;
  std::vector<double> end_targets;
  const nn::Matrix& z = start_logits.value();
  for (int t = 0; t < m; ++t) {
    const bool predicted = Sigmoid(z(t, 0)) >= hymr.threshold;
    if (start_targets(t, 0) == 0.0 && !predicted) continue;
    const Span range = CandidateEndRange(t, doc, hymr);
    for (int e = range.start; e <= range.end; ++e) {
      pairs.push_back({t, e});
      end_targets.push_back(gold_set.count(Span{t, e}) ? 1.0 : 0.0);
    }
  }
  if (!pairs.empty()) {
    const nn::Matrix targets = Eigen::Map<const nn::Matrix>(
        end_targets.data(), static_cast<Eigen::Index>(end_targets.size()), 1);
    total = nn::Add(total, nn::BceWithLogitsSum(EndLogits(h, pairs), targets));
    labels += static_cast<int>(pairs.size());
  }
  return nn::Scale(total, 1.0 / labels);
}

void MentionDetector::RegisterParameters(nn::ParameterSet& set) const {
  const auto g = nn::ParamGroup::kHeads;
  start_mlp.Register(set, "detector.start_mlp", g);
  if (config_.end_scorer == EndScorer::kBiaffine) {
    fc1.Register(set, "detector.fc1", g);
    fc2.Register(set, "detector.fc2", g);
    set.Add("detector.u", u, g);
    w.Register(set, "detector.w", g);
  }
  end_mlp.Register(set, "detector.end_mlp", g);
}

}  // namespace corefcs
