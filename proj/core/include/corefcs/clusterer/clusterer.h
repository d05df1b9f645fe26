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


// Incremental mention clustering. Mentions are visited left to right and
// either join the best-scoring existing cluster or open a new one. The
// probabilities of accepted joins are kept on the cluster for the cluster
// filter downstream.

#ifndef COREFCS_CLUSTERER_CLUSTERER_H_
#define COREFCS_CLUSTERER_CLUSTERER_H_

#include <span>
#include <vector>

#include "corefcs/corpus/document.h"
#include "corefcs/nn/layers.h"

namespace corefcs {

struct ClustererConfig {
  double threshold = 0.5;
  // Scorer hidden width; 0 means d_h.
  int hidden = 0;

  void Validate() const;
  bool operator==(const ClustererConfig&) const = default;
};

class MentionClusterer {
 public:
  MentionClusterer(int d_h, const ClustererConfig& config,
                   nn::Initializer& init);

  // n x d_h projections of [H[start]; H[end]] for each span.
  nn::Tensor MentionRepr(std::span<const Span> spans,
                         const nn::Tensor& h) const;

  // Join logits for one mention representation (1 x d) against k cluster
  // representations (k x d). Returns k x 1.
  nn::Tensor JoinLogits(const nn::Tensor& mention,
                        const nn::Tensor& clusters) const;

  // `mentions` must be sorted by (start, end). Every mention lands in
  // exactly one output cluster; clusters are ordered by creation.
  std::vector<Cluster> ClusterMentions(std::span<const Mention> mentions,
                                       const nn::Tensor& h) const;

  // Teacher-forced binary cross-entropy: each gold mention in order is scored
  // against every gold cluster already opened by earlier gold mentions; the
  // target is 1 for its own cluster. Mean over decisions; a zero tensor when
  // the document has fewer than two gold mentions.
  nn::Tensor Loss(const Document& doc, const nn::Tensor& h) const;

  void RegisterParameters(nn::ParameterSet& set) const;
  const ClustererConfig& config() const { return config_; }

  nn::Linear mention_proj;
  // Over [m; c; m * c].
  nn::Mlp scorer;

 private:
  ClustererConfig config_;
};

}  // namespace corefcs

#endif  // COREFCS_CLUSTERER_CLUSTERER_H_
