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


// Selection of the least confident mentions and clusters for LLM review.

#ifndef COREFCS_SELECTORS_SELECTORS_H_
#define COREFCS_SELECTORS_SELECTORS_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corefcs/corpus/document.h"

namespace corefcs {

// Pronouns that skip the mention check, read from the bundled resource.
const std::set<std::string>& DefaultPronouns();

struct FilterConfig {
  double eta1 = 0.6;
  double eta2 = 0.6;
  double rho = 1e-3;
  std::set<std::string> pronouns = DefaultPronouns();

  void Validate() const;
  bool operator==(const FilterConfig&) const = default;
};

bool IsBypassPronoun(std::string_view text, const FilterConfig& config);

// Number of items, out of n, that fall in the bottom `eta` fraction. Rounds
// up so that any positive fraction checks at least one item.
int BottomCount(double eta, int n);

template <typename T>
struct Selection {
  std::vector<T> to_check;
  std::vector<T> bypassed;
  // Input positions of to_check, ascending.
  std::vector<size_t> checked_indices;
};

// Pronouns are bypassed. The rest are ranked by p_end (highest first, stable)
// and the bottom ceil(eta1 * N) are checked. Both parts keep document order.
// A mention without p_end ranks as fully confident.
Selection<Mention> SelectMentionsForCheck(std::span<const Mention> mentions,
                                          const FilterConfig& config);

// mean(p) - rho * sum_j (mean(p) - p_j)^2. Throws UndefinedInputError on an
// empty list.
double ClusterConfidence(std::span<const double> pair_probs, double rho);

// Singletons are bypassed. Multi-mention clusters are ranked by confidence
// and the bottom ceil(eta2 * N) are checked. Both parts keep input order.
// A multi-mention cluster without pair probabilities (e.g. produced by a
// split) ranks as fully confident.
Selection<Cluster> SelectClustersForCheck(std::span<const Cluster> clusters,
                                          const FilterConfig& config);

}  // namespace corefcs

#endif  // COREFCS_SELECTORS_SELECTORS_H_
