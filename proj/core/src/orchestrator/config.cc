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


#include "corefcs/orchestrator/config.h"

#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "corefcs/base/error.h"
#include "json.hpp"

namespace corefcs {
namespace {

using json = nlohmann::ordered_json;

// Reads keys of one section, remembering which were consumed so leftovers
// can be reported.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) {
      throw ConfigError(fmt::format("config section '{}' must be an object",
                                    name_));
    }
  }

  template <typename T>
  void Read(const char* key, T* out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      *out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(
          fmt::format("config {}.{}: {}", name_, key, e.what()));
    }
  }

  // Enum or special value stored as a string.
  template <typename T, typename Parse>
  void ReadWith(const char* key, T* out, Parse parse) {
    std::string text;
    seen_.insert(key);
    if (!j_.contains(key)) return;
    Read(key, &text);
    *out = parse(text);
  }

  const json* Child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  void Finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.count(item.key())) {
        throw ConfigError(
            fmt::format("unknown config key '{}.{}'", name_, item.key()));
      }
    }
  }

 private:
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

int ParseLmax(const json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return kUnboundedSpanLength;
    throw ConfigError("hymr.l_max must be an integer or \"inf\"");
  }
  if (!value.is_number_integer()) {
    throw ConfigError("hymr.l_max must be an integer or \"inf\"");
  }
  return value.get<int>();
}

}  // namespace

void PipelineConfig::Validate() const {
  encoder.Validate();
  detector.Validate();
  hymr.Validate();
  clusterer.Validate();
  filters.Validate();
  agent.Validate();
  llm.client.Validate();
  if (train.lr_encoder < 0 || train.lr_heads < 0) {
    throw ConfigError("learning rates must be >= 0");
  }
  if (train.optimizer != "adafactor") {
    throw ConfigError(
        fmt::format("unsupported optimizer '{}'", train.optimizer));
  }
  if (train.grad_accum < 1) throw ConfigError("grad_accum must be >= 1");
  if (train.clip_norm <= 0) throw ConfigError("clip_norm must be positive");
  if (train.warmup_frac < 0 || train.warmup_frac > 1) {
    throw ConfigError("warmup_frac must be in [0, 1]");
  }
  if (train.early_stop_patience < 0 || train.validate_every_epochs < 1 ||
      train.max_epochs < 0) {
    throw ConfigError("invalid epoch settings in train section");
  }
  if (train.detection_weight < 0 || train.clustering_weight < 0) {
    throw ConfigError("loss weights must be >= 0");
  }
  if (model.kind != "neural" && model.kind != "planted") {
    throw ConfigError(fmt::format("unknown model kind '{}'", model.kind));
  }
  const std::string& b = llm.backend;
  if (b != "api" && b != "mock:yes" && b != "mock:no" && b != "mock:gold" &&
      b.rfind("mock:replay:", 0) != 0) {
    throw ConfigError(fmt::format("unknown llm backend '{}'", b));
  }
}

std::string PipelineConfig::Resolve(const std::string& path) const {
  if (path.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

bool PipelineConfig::operator==(const PipelineConfig& o) const {
  return seed == o.seed && encoder == o.encoder && detector == o.detector &&
         hymr == o.hymr && clusterer == o.clusterer && filters == o.filters &&
         agent == o.agent && llm == o.llm && train == o.train &&
         model == o.model && data == o.data;
}

PipelineConfig ParseConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  PipelineConfig c;
  Section top(root, "<root>");
  top.Read("seed", &c.seed);

  if (const json* j = top.Child("encoder")) {
    Section s(*j, "encoder");
    s.Read("d_h", &c.encoder.d_h);
    s.ReadWith("backend", &c.encoder.backend, ParseEncoderBackend);
    s.ReadWith("bridging", &c.encoder.bridging, ParseBridging);
    s.Read("mha_heads", &c.encoder.mha_heads);
    s.Read("window", &c.encoder.window);
    s.ReadWith("strategy", &c.encoder.strategy, ParseSegmentStrategy);
    s.Read("layers", &c.encoder.layers);
    s.Read("attention_heads", &c.encoder.attention_heads);
    s.Read("ffn_dim", &c.encoder.ffn_dim);
    s.Finish();
  }
  if (const json* j = top.Child("detector")) {
    Section s(*j, "detector");
    s.ReadWith("end_scorer", &c.detector.end_scorer, ParseEndScorer);
    s.Read("d_r", &c.detector.d_r);
    s.Read("start_hidden", &c.detector.start_hidden);
    s.Finish();
  }
  if (const json* j = top.Child("hymr")) {
    Section s(*j, "hymr");
    if (const json* l = s.Child("l_max")) c.hymr.l_max = ParseLmax(*l);
    s.Read("threshold", &c.hymr.threshold);
    s.Finish();
  }
  if (const json* j = top.Child("clusterer")) {
    Section s(*j, "clusterer");
    s.Read("threshold", &c.clusterer.threshold);
    s.Read("hidden", &c.clusterer.hidden);
    s.Finish();
  }
  if (const json* j = top.Child("filters")) {
    Section s(*j, "filters");
    s.Read("eta1", &c.filters.eta1);
    s.Read("eta2", &c.filters.eta2);
    s.Read("rho", &c.filters.rho);
    s.Finish();
  }
  if (const json* j = top.Child("agent")) {
    Section s(*j, "agent");
    s.Read("context_sentences", &c.agent.context_sentences);
    s.Read("max_parallel", &c.agent.max_parallel);
    s.Read("max_retries", &c.agent.max_retries);
    s.Read("backoff_ms", &c.agent.backoff_ms);
    s.Read("malformed_retries", &c.agent.malformed_retries);
    s.Finish();
  }
  if (const json* j = top.Child("llm")) {
    Section s(*j, "llm");
    s.Read("backend", &c.llm.backend);
    s.Read("base_url", &c.llm.client.base_url);
    s.Read("api_key_env", &c.llm.client.api_key_env);
    s.Read("model_name", &c.llm.client.model_name);
    s.Read("temperature", &c.llm.client.temperature);
    s.Read("timeout_seconds", &c.llm.client.timeout_seconds);
    s.Finish();
  }
  if (const json* j = top.Child("train")) {
    Section s(*j, "train");
    s.Read("lr_encoder", &c.train.lr_encoder);
    s.Read("lr_heads", &c.train.lr_heads);
    s.Read("optimizer", &c.train.optimizer);
    s.Read("grad_accum", &c.train.grad_accum);
    s.Read("clip_norm", &c.train.clip_norm);
    s.Read("warmup_frac", &c.train.warmup_frac);
    s.Read("early_stop_patience", &c.train.early_stop_patience);
    s.Read("validate_every_epochs", &c.train.validate_every_epochs);
    s.Read("max_epochs", &c.train.max_epochs);
    s.Read("detection_weight", &c.train.detection_weight);
    s.Read("clustering_weight", &c.train.clustering_weight);
    s.Read("drop_singletons", &c.train.drop_singletons);
    s.Finish();
  }
  if (const json* j = top.Child("model")) {
    Section s(*j, "model");
    s.Read("kind", &c.model.kind);
    s.Read("checkpoint", &c.model.checkpoint);
    s.Read("fixture", &c.model.fixture);
    s.Finish();
  }
  if (const json* j = top.Child("data")) {
    Section s(*j, "data");
    s.Read("train", &c.data.train);
    s.Read("val", &c.data.val);
    s.Read("test", &c.data.test);
    s.Finish();
  }
  top.Finish();
  c.Validate();
  return c;
}

std::string SerializeConfig(const PipelineConfig& c) {
  json root;
  root["seed"] = c.seed;
  root["encoder"] = {
      {"d_h", c.encoder.d_h},
      {"backend", EncoderBackendName(c.encoder.backend)},
      {"bridging", BridgingName(c.encoder.bridging)},
      {"mha_heads", c.encoder.mha_heads},
      {"window", c.encoder.window},
      {"strategy", SegmentStrategyName(c.encoder.strategy)},
      {"layers", c.encoder.layers},
      {"attention_heads", c.encoder.attention_heads},
      {"ffn_dim", c.encoder.ffn_dim}};
  root["detector"] = {{"end_scorer", EndScorerName(c.detector.end_scorer)},
                      {"d_r", c.detector.d_r},
                      {"start_hidden", c.detector.start_hidden}};
  root["hymr"] = {{"l_max", c.hymr.l_max == kUnboundedSpanLength
                                ? json("inf")
                                : json(c.hymr.l_max)},
                  {"threshold", c.hymr.threshold}};
  root["clusterer"] = {{"threshold", c.clusterer.threshold},
                       {"hidden", c.clusterer.hidden}};
  root["filters"] = {{"eta1", c.filters.eta1},
                     {"eta2", c.filters.eta2},
                     {"rho", c.filters.rho}};
  root["agent"] = {{"context_sentences", c.agent.context_sentences},
                   {"max_parallel", c.agent.max_parallel},
                   {"max_retries", c.agent.max_retries},
                   {"backoff_ms", c.agent.backoff_ms},
                   {"malformed_retries", c.agent.malformed_retries}};
  root["llm"] = {{"backend", c.llm.backend},
                 {"base_url", c.llm.client.base_url},
                 {"api_key_env", c.llm.client.api_key_env},
                 {"model_name", c.llm.client.model_name},
                 {"temperature", c.llm.client.temperature},
                 {"timeout_seconds", c.llm.client.timeout_seconds}};
  root["train"] = {{"lr_encoder", c.train.lr_encoder},
                   {"lr_heads", c.train.lr_heads},
                   {"optimizer", c.train.optimizer},
                   {"grad_accum", c.train.grad_accum},
                   {"clip_norm", c.train.clip_norm},
                   {"warmup_frac", c.train.warmup_frac},
                   {"early_stop_patience", c.train.early_stop_patience},
                   {"validate_every_epochs", c.train.validate_every_epochs},
                   {"max_epochs", c.train.max_epochs},
                   {"detection_weight", c.train.detection_weight},
                   {"clustering_weight", c.train.clustering_weight},
                   {"drop_singletons", c.train.drop_singletons}};
  root["model"] = {{"kind", c.model.kind},
                   {"checkpoint", c.model.checkpoint},
                   {"fixture", c.model.fixture}};
  root["data"] = {{"train", c.data.train},
                  {"val", c.data.val},
                  {"test", c.data.test}};
  return root.dump(2) + "\n";
}

PipelineConfig LoadConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  PipelineConfig c;
  try {
    c = ParseConfig(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path, e.what()));
  }
  const auto parent = std::filesystem::path(path).parent_path();
  c.base_dir = parent.empty() ? "." : parent.string();
  return c;
}

}  // namespace corefcs
