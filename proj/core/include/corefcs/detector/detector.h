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


// Mention detection. Start tokens are scored independently; for each start
// above threshold, candidate ends within the hybrid regularization window
// [t_s, t_s + min(L_max, distance to EOS)] are scored either by an MLP over
// the concatenated start/end rows or by a biaffine scorer.

#ifndef COREFCS_DETECTOR_DETECTOR_H_
#define COREFCS_DETECTOR_DETECTOR_H_

#include <climits>
#include <span>
#include <string_view>
#include <vector>

#include "corefcs/corpus/document.h"
#include "corefcs/nn/layers.h"

namespace corefcs {

// Stands for an unbounded maximum span length.
inline constexpr int kUnboundedSpanLength = INT_MAX;

struct HymrConfig {
  int l_max = 30;
  double threshold = 0.5;

  void Validate() const;
  bool operator==(const HymrConfig&) const = default;
};

// Inclusive range of admissible end tokens for a mention starting at t_s.
Span CandidateEndRange(int t_s, const Document& doc, const HymrConfig& config);

enum class EndScorer { kBaseline, kBiaffine };

EndScorer ParseEndScorer(std::string_view name);
std::string_view EndScorerName(EndScorer scorer);

struct DetectorConfig {
  EndScorer end_scorer = EndScorer::kBiaffine;
  int d_r = 128;
  // Hidden width of the start MLP; 0 means d_h.
  int start_hidden = 0;

  void Validate() const;
  bool operator==(const DetectorConfig&) const = default;
};

// One (start, end) pair to score.
struct SpanCandidate {
  int start;
  int end;
};

class MentionDetector {
 public:
  MentionDetector(int d_h, const DetectorConfig& config, nn::Initializer& init);

  // M x 1 start logits.
  nn::Tensor StartLogits(const nn::Tensor& h) const;
  std::vector<double> StartProbs(const nn::Tensor& h) const;

  // Biaffine score matrix, k x d_r, for aligned start and end rows.
  nn::Tensor BiaffineScores(const nn::Tensor& hs_dup,
                            const nn::Tensor& he) const;
  // k x 1 end logits for the given pairs, using the configured scorer.
  nn::Tensor EndLogits(const nn::Tensor& h,
                       std::span<const SpanCandidate> pairs) const;
  std::vector<double> EndProbs(int t_s, std::span<const int> candidate_ends,
                               const nn::Tensor& h) const;

  // Mentions sorted by (start, end), each carrying p_start and p_end.
  std::vector<Mention> Detect(const Document& doc, const nn::Tensor& h,
                              const HymrConfig& hymr) const;

  // Mean binary cross-entropy over start labels and over end labels inside
  // the candidate ranges of gold starts and predicted false-positive starts.
  nn::Tensor Loss(const Document& doc, const nn::Tensor& h,
                  const HymrConfig& hymr) const;

  void RegisterParameters(nn::ParameterSet& set) const;

  int d_h() const { return d_h_; }
  const DetectorConfig& config() const { return config_; }

  nn::Mlp start_mlp;
  nn::Linear fc1;
  nn::Linear fc2;
  // Bilinear tensor stored as d_h x (d_r * d_h); entry (p, r * d_h + q) is
  // the weight of x_s[p] * x_e[q] in output channel r.
  nn::Tensor u;
  // Linear term over [fc1(x_s); fc2(x_e)] with bias.
  nn::Linear w;
  nn::Mlp end_mlp;

 private:
  int d_h_;
  DetectorConfig config_;
};

}  // namespace corefcs

#endif  // COREFCS_DETECTOR_DETECTOR_H_
