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


#include "corefcs/selectors/selectors.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "corefcs/base/error.h"
#include "corefcs/base/resources.h"

namespace corefcs {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Returns indices of the bottom `k` items under a stable descending sort by
// score, as a mask over the input.
std::vector<bool> BottomMask(const std::vector<double>& scores, int k) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  std::vector<bool> mask(scores.size(), false);
  for (size_t i = order.size() - k; i < order.size(); ++i) {
    mask[order[i]] = true;
  }
  return mask;
}

}  // namespace

const std::set<std::string>& DefaultPronouns() {
  static const std::set<std::string> pronouns = [] {
    std::set<std::string> out;
    std::istringstream in(Resource("pronouns"));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) out.insert(Lower(line));
    }
    return out;
  }();
  return pronouns;
}

void FilterConfig::Validate() const {
  for (double eta : {eta1, eta2}) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw ConfigError(fmt::format("eta {} outside [0, 1]", eta));
    }
  }
  if (!(rho > 0.0)) throw ConfigError(fmt::format("rho {} must be > 0", rho));
  if (pronouns.count("it")) {
    throw ConfigError("the bypass pronoun list must not contain \"it\"");
  }
}

bool IsBypassPronoun(std::string_view text, const FilterConfig& config) {
  return config.pronouns.count(Lower(text)) > 0;
}

int BottomCount(double eta, int n) {
  const int k = static_cast<int>(std::ceil(eta * n - 1e-9));
  return std::clamp(k, 0, n);
}

Selection<Mention> SelectMentionsForCheck(std::span<const Mention> mentions,
                                          const FilterConfig& config) {
  std::vector<double> scores;
  std::vector<size_t> ranked;
  for (size_t i = 0; i < mentions.size(); ++i) {
    if (IsBypassPronoun(mentions[i].text, config)) continue;
    ranked.push_back(i);
    scores.push_back(mentions[i].p_end.value_or(1.0));
  }
  const std::vector<bool> mask = BottomMask(
      scores, BottomCount(config.eta1, static_cast<int>(ranked.size())));
  std::vector<bool> check(mentions.size(), false);
  for (size_t j = 0; j < ranked.size(); ++j) check[ranked[j]] = mask[j];

  Selection<Mention> out;
  for (size_t i = 0; i < mentions.size(); ++i) {
    if (check[i]) out.checked_indices.push_back(i);
    (check[i] ? out.to_check : out.bypassed).push_back(mentions[i]);
  }
  return out;
}

double ClusterConfidence(std::span<const double> pair_probs, double rho) {
  if (pair_probs.empty()) {
    throw UndefinedInputError(
        "cluster confidence is undefined without pair probabilities");
  }
  const double mean =
      std::accumulate(pair_probs.begin(), pair_probs.end(), 0.0) /
      static_cast<double>(pair_probs.size());
  double spread = 0.0;
  for (double p : pair_probs) spread += (mean - p) * (mean - p);
  return mean - rho * spread;
}

Selection<Cluster> SelectClustersForCheck(std::span<const Cluster> clusters,
                                          const FilterConfig& config) {
  std::vector<double> scores;
  std::vector<size_t> ranked;
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].size() < 2) continue;
    ranked.push_back(i);
    scores.push_back(clusters[i].pair_probs.empty()
                         ? 1.0
                         : ClusterConfidence(clusters[i].pair_probs,
                                             config.rho));
  }
  const std::vector<bool> mask = BottomMask(
      scores, BottomCount(config.eta2, static_cast<int>(ranked.size())));
  std::vector<bool> check(clusters.size(), false);
  for (size_t j = 0; j < ranked.size(); ++j) check[ranked[j]] = mask[j];

  Selection<Cluster> out;
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (check[i]) out.checked_indices.push_back(i);
    (check[i] ? out.to_check : out.bypassed).push_back(clusters[i]);
  }
  return out;
}

}  // namespace corefcs
