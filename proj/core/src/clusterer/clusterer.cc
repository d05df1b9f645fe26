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


#include "corefcs/clusterer/clusterer.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "corefcs/base/error.h"

namespace corefcs {
namespace {

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

void ClustererConfig::Validate() const {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ConfigError(
        fmt::format("clustering threshold {} outside (0, 1)", threshold));
  }
  if (hidden < 0) throw ConfigError("clusterer hidden must be >= 0");
}

MentionClusterer::MentionClusterer(int d_h, const ClustererConfig& config,
                                   nn::Initializer& init)
    : mention_proj(2 * d_h, d_h, init),
      scorer(3 * d_h, config.hidden > 0 ? config.hidden : d_h, init),
      config_(config) {
  config.Validate();
}

nn::Tensor MentionClusterer::MentionRepr(std::span<const Span> spans,
                                         const nn::Tensor& h) const {
  std::vector<int> starts, ends;
  for (const Span& s : spans) {
    if (s.start < 0 || s.end >= h.rows() || s.start > s.end) {
      throw ShapeError(fmt::format("span [{}, {}] outside {} hidden rows",
                                   s.start, s.end, h.rows()));
    }
    starts.push_back(s.start);
    ends.push_back(s.end);
  }
  const nn::Tensor both[] = {nn::GatherRows(h, starts),
                             nn::GatherRows(h, ends)};
  return mention_proj.Forward(nn::ConcatCols(both));
}

nn::Tensor MentionClusterer::JoinLogits(const nn::Tensor& mention,
                                        const nn::Tensor& clusters) const {
  const nn::Tensor m = nn::BroadcastRows(mention, clusters.rows());
  const nn::Tensor parts[] = {m, clusters, nn::Mul(m, clusters)};
  return scorer.Forward(nn::ConcatCols(parts));
}

std::vector<Cluster> MentionClusterer::ClusterMentions(
    std::span<const Mention> mentions, const nn::Tensor& h) const {
  std::vector<Cluster> clusters;
  if (mentions.empty()) return clusters;
  std::vector<Span> spans;
  for (const Mention& m : mentions) spans.push_back(m.span());
  const nn::Matrix reprs = MentionRepr(spans, h).value();
  const Eigen::Index d = reprs.cols();

  nn::Matrix sums(0, d);  // running member sums, one row per cluster
  for (size_t i = 0; i < mentions.size(); ++i) {
    const Eigen::Index row = static_cast<Eigen::Index>(i);
    int best = -1;
    double best_p = -1.0;
    if (!clusters.empty()) {
      nn::Matrix means(sums.rows(), d);
      for (Eigen::Index c = 0; c < sums.rows(); ++c) {
        means.row(c) = sums.row(c) / static_cast<double>(clusters[c].size());
      }
      const nn::Matrix z =
          JoinLogits(nn::Tensor(reprs.row(row)), nn::Tensor(means)).value();
      for (Eigen::Index c = 0; c < z.rows(); ++c) {
        const double p = Sigmoid(z(c, 0));
        if (p > best_p) {  // strict: ties stay with the earlier cluster
          best_p = p;
          best = static_cast<int>(c);
        }
      }
    }
    if (best >= 0 && best_p >= config_.threshold) {
      clusters[best].mentions.push_back(mentions[i]);
      clusters[best].pair_probs.push_back(best_p);
      sums.row(best) += reprs.row(row);
    } else {
      Cluster c;
      c.mentions.push_back(mentions[i]);
      clusters.push_back(std::move(c));
      sums.conservativeResize(sums.rows() + 1, Eigen::NoChange);
      sums.row(sums.rows() - 1) = reprs.row(row);
    }
  }
  return clusters;
}

nn::Tensor MentionClusterer::Loss(const Document& doc,
                                  const nn::Tensor& h) const {
  // Gold mentions in document order with their gold cluster index.
  std::vector<std::pair<Span, int>> gold;
  for (size_t c = 0; c < doc.gold_clusters.size(); ++c) {
    for (const Mention& m : doc.gold_clusters[c].mentions) {
      gold.push_back({m.span(), static_cast<int>(c)});
    }
  }
  std::sort(gold.begin(), gold.end());
  if (gold.size() < 2) return nn::Tensor(nn::Matrix::Zero(1, 1));

  std::vector<Span> spans;
  for (const auto& [span, c] : gold) spans.push_back(span);
  const nn::Tensor reprs = MentionRepr(spans, h);
  const Eigen::Index n = static_cast<Eigen::Index>(gold.size());

  // One row per (mention, open cluster) decision. `select` picks the
  // mention row and `average` forms the mean of the cluster's earlier
  // members.
  std::vector<std::vector<int>> members;  // per opened cluster, in order
  std::map<int, int> opened;              // gold cluster -> members index
  std::vector<std::pair<int, int>> decisions;  // (mention, members index)
  std::vector<double> targets;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = gold[i].second;
    for (size_t k = 0; k < members.size(); ++k) {
      decisions.push_back({static_cast<int>(i), static_cast<int>(k)});
      targets.push_back(opened.count(c) && opened[c] == static_cast<int>(k)
                            ? 1.0
                            : 0.0);
    }
    auto it = opened.find(c);
    if (it == opened.end()) {
      opened[c] = static_cast<int>(members.size());
      members.push_back({static_cast<int>(i)});
    } else {
      members[it->second].push_back(static_cast<int>(i));
    }
  }
  // Members added after a decision must not leak into it, so the averaging
  // row counts only members with index below the deciding mention.
  const Eigen::Index r = static_cast<Eigen::Index>(decisions.size());
  nn::Matrix select = nn::Matrix::Zero(r, n);
  nn::Matrix average = nn::Matrix::Zero(r, n);
  for (Eigen::Index row = 0; row < r; ++row) {
    const auto [i, k] = decisions[row];
    select(row, i) = 1.0;
    int count = 0;
    for (int j : members[k]) count += j < i;
    for (int j : members[k]) {
      if (j < i) average(row, j) = 1.0 / count;
    }
  }
  const nn::Tensor m = nn::MatMul(nn::Tensor(select), reprs);
  const nn::Tensor c = nn::MatMul(nn::Tensor(average), reprs);
  const nn::Tensor parts[] = {m, c, nn::Mul(m, c)};
  const nn::Tensor logits = scorer.Forward(nn::ConcatCols(parts));
  const nn::Matrix y =
      Eigen::Map<const nn::Matrix>(targets.data(), r, 1);
  return nn::Scale(nn::BceWithLogitsSum(logits, y), 1.0 / r);
}

void MentionClusterer::RegisterParameters(nn::ParameterSet& set) const {
  const auto g = nn::ParamGroup::kHeads;
  mention_proj.Register(set, "clusterer.mention_proj", g);
  scorer.Register(set, "clusterer.scorer", g);
}

}  // namespace corefcs
