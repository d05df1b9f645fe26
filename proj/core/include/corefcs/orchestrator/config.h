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


// Pipeline configuration, stored as a JSON object with one section per
// component. Every key is optional; missing keys keep their defaults and
// unknown keys are rejected.

#ifndef COREFCS_ORCHESTRATOR_CONFIG_H_
#define COREFCS_ORCHESTRATOR_CONFIG_H_

#include <cstdint>
#include <string>

#include "corefcs/agent/checker.h"
#include "corefcs/agent/client.h"
#include "corefcs/clusterer/clusterer.h"
#include "corefcs/detector/detector.h"
#include "corefcs/encoder/encoder.h"
#include "corefcs/selectors/selectors.h"

namespace corefcs {

struct TrainConfig {
  double lr_encoder = 2e-5;
  double lr_heads = 3e-4;
  std::string optimizer = "adafactor";
  int grad_accum = 4;
  double clip_norm = 1.0;
  double warmup_frac = 0.10;
  int early_stop_patience = 30;
  int validate_every_epochs = 1;
  int max_epochs = 200;
  double detection_weight = 1.0;
  double clustering_weight = 1.0;
  // Score validation without predicted or gold singletons.
  bool drop_singletons = false;

  bool operator==(const TrainConfig&) const = default;
};

struct ModelConfig {
  // "neural" loads `checkpoint`; "planted" reads fixed outputs from
  // `fixture`.
  std::string kind = "neural";
  std::string checkpoint = "model.ckpt";
  std::string fixture;

  bool operator==(const ModelConfig&) const = default;
};

struct LlmConfig {
  // "api", "mock:yes", "mock:no", "mock:gold" or "mock:replay:PATH".
  std::string backend = "mock:yes";
  LlmClientConfig client;

  bool operator==(const LlmConfig&) const = default;
};

struct DataConfig {
  std::string train;
  std::string val;
  std::string test;

  bool operator==(const DataConfig&) const = default;
};

struct PipelineConfig {
  uint64_t seed = 13;
  EncoderConfig encoder;
  DetectorConfig detector;
  HymrConfig hymr;
  ClustererConfig clusterer;
  FilterConfig filters;
  AgentConfig agent;
  LlmConfig llm;
  TrainConfig train;
  ModelConfig model;
  DataConfig data;
  // Directory relative paths resolve against; not serialized.
  std::string base_dir = ".";

  void Validate() const;
  // `path` if absolute, else joined onto base_dir. Empty stays empty.
  std::string Resolve(const std::string& path) const;
  bool operator==(const PipelineConfig& other) const;
};

// Throws ConfigError on unknown keys, wrong types or invalid values.
PipelineConfig ParseConfig(const std::string& json_text);
std::string SerializeConfig(const PipelineConfig& config);
// Parses the file and sets base_dir to its directory.
PipelineConfig LoadConfig(const std::string& path);

}  // namespace corefcs

#endif  // COREFCS_ORCHESTRATOR_CONFIG_H_
