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


// Coreference models as the pipeline sees them: a mention detector and a
// clusterer over a document.

#ifndef COREFCS_ORCHESTRATOR_MODEL_H_
#define COREFCS_ORCHESTRATOR_MODEL_H_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "corefcs/clusterer/clusterer.h"
#include "corefcs/detector/detector.h"
#include "corefcs/encoder/encoder.h"
#include "corefcs/orchestrator/config.h"

namespace corefcs {

class CorefModel {
 public:
  virtual ~CorefModel() = default;
  // Mentions sorted by (start, end), with detection probabilities.
  virtual std::vector<Mention> Detect(const Document& doc) const = 0;
  // Clusters over exactly `mentions` (sorted by (start, end)).
  virtual std::vector<Cluster> ClusterMentions(
      const Document& doc, std::span<const Mention> mentions) const = 0;
};

class NeuralCorefModel : public CorefModel {
 public:
  // Fresh weights drawn from config.seed.
  NeuralCorefModel(const PipelineConfig& config, Vocabulary vocab);

  std::vector<Mention> Detect(const Document& doc) const override;
  std::vector<Cluster> ClusterMentions(
      const Document& doc, std::span<const Mention> mentions) const override;

  struct Losses {
    nn::Tensor total;
    double detection = 0.0;
    double clustering = 0.0;
  };
  // Weighted detection plus clustering loss, differentiable.
  Losses Loss(const Document& doc) const;

  // Self-describing binary: magic, JSON header with the config and
  // vocabulary, then named float64 tensors.
  void Save(const std::string& path) const;
  // Hyperparameters come from the checkpoint; runtime sections (filters,
  // agent, llm, data, model) come from `runtime` when given.
  static std::unique_ptr<NeuralCorefModel> Load(
      const std::string& path, const PipelineConfig* runtime = nullptr);

  const nn::ParameterSet& parameters() const { return params_; }
  const PipelineConfig& config() const { return config_; }
  const Vocabulary& vocab() const { return vocab_; }
  const DocumentEncoder& encoder() const { return encoder_; }
  const MentionDetector& detector() const { return detector_; }
  const MentionClusterer& clusterer() const { return clusterer_; }
  // Changes the span-length regularization used by Detect.
  void set_hymr(const HymrConfig& hymr) { config_.hymr = hymr; }

  // Snapshot and restore of all parameter values.
  std::vector<nn::Matrix> Snapshot() const;
  void Restore(const std::vector<nn::Matrix>& values);

 private:
  NeuralCorefModel(const PipelineConfig& config, Vocabulary vocab,
                   nn::Initializer&& init);

  PipelineConfig config_;
  Vocabulary vocab_;
  DocumentEncoder encoder_;
  MentionDetector detector_;
  MentionClusterer clusterer_;
  nn::ParameterSet params_;
};

// Replays fixed detector and clusterer outputs from a JSON fixture:
//   {"documents": {"<doc_id>": {
//      "mentions": [{"start": s, "end": e, "p_start": p, "p_end": p}, ...],
//      "clusters": [{"mentions": [[s, e], ...], "pair_probs": [p, ...]}]}}}
// Clustering keeps the fixture clusters restricted to the mentions it is
// given; a mention absent from every fixture cluster becomes a singleton.
class PlantedCorefModel : public CorefModel {
 public:
  static std::unique_ptr<PlantedCorefModel> Load(const std::string& path);
  static std::unique_ptr<PlantedCorefModel> FromJson(const std::string& text);

  std::vector<Mention> Detect(const Document& doc) const override;
  std::vector<Cluster> ClusterMentions(
      const Document& doc, std::span<const Mention> mentions) const override;

 private:
  struct Entry {
    std::vector<Mention> mentions;
    std::vector<std::vector<Span>> clusters;
    std::vector<std::vector<double>> pair_probs;
  };
  std::map<std::string, Entry> entries_;
};

// Builds the model named by config.model.
std::unique_ptr<CorefModel> LoadModel(const PipelineConfig& config);

}  // namespace corefcs

#endif  // COREFCS_ORCHESTRATOR_MODEL_H_
