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


#include "corefcs/orchestrator/model.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "corefcs/base/error.h"
#include "json.hpp"

namespace corefcs {
namespace {

constexpr char kMagic[8] = {'C', 'O', 'R', 'F', 'C', 'K', 'P', '1'};

void SortMentions(std::vector<Mention>& mentions) {
  std::sort(mentions.begin(), mentions.end(),
            [](const Mention& a, const Mention& b) {
              return a.span() < b.span();
            });
}

}  // namespace

NeuralCorefModel::NeuralCorefModel(const PipelineConfig& config,
                                   Vocabulary vocab)
    : NeuralCorefModel(config, std::move(vocab), nn::Initializer(config.seed)) {
}

NeuralCorefModel::NeuralCorefModel(const PipelineConfig& config,
                                   Vocabulary vocab, nn::Initializer&& init)
    : config_(config),
      vocab_(vocab),
      encoder_(DocumentEncoder::Create(config.encoder, std::move(vocab), init)),
      detector_(config.encoder.d_h, config.detector, init),
      clusterer_(config.encoder.d_h, config.clusterer, init) {
  config_.Validate();
  encoder_.RegisterParameters(params_);
  detector_.RegisterParameters(params_);
  clusterer_.RegisterParameters(params_);
}

std::vector<Mention> NeuralCorefModel::Detect(const Document& doc) const {
  nn::NoGradGuard no_grad;
  return detector_.Detect(doc, encoder_.Encode(doc), config_.hymr);
}

std::vector<Cluster> NeuralCorefModel::ClusterMentions(
    const Document& doc, std::span<const Mention> mentions) const {
  if (mentions.empty()) return {};
  nn::NoGradGuard no_grad;
  return clusterer_.ClusterMentions(mentions, encoder_.Encode(doc));
}

NeuralCorefModel::Losses NeuralCorefModel::Loss(const Document& doc) const {
  const nn::Tensor h = encoder_.Encode(doc);
  const nn::Tensor detection = detector_.Loss(doc, h, config_.hymr);
  const nn::Tensor clustering = clusterer_.Loss(doc, h);
  Losses out;
  out.detection = detection.item();
  out.clustering = clustering.item();
  out.total = nn::Add(nn::Scale(detection, config_.train.detection_weight),
                      nn::Scale(clustering, config_.train.clustering_weight));
  return out;
}

std::vector<nn::Matrix> NeuralCorefModel::Snapshot() const {
  std::vector<nn::Matrix> out;
  for (const auto& p : params_.params()) out.push_back(p.tensor.value());
  return out;
}

void NeuralCorefModel::Restore(const std::vector<nn::Matrix>& values) {
  if (values.size() != params_.size()) {
    throw ShapeError("snapshot does not match the parameter set");
  }
  for (size_t i = 0; i < values.size(); ++i) {
    nn::Tensor t = params_.params()[i].tensor;
    t.mutable_value() = values[i];
  }
}

void NeuralCorefModel::Save(const std::string& path) const {
  nlohmann::ordered_json header;
  header["format"] = 1;
  header["config"] = nlohmann::ordered_json::parse(SerializeConfig(config_));
  header["vocabulary"] = vocab_.tokens();
  nlohmann::ordered_json tensors = nlohmann::ordered_json::array();
  for (const auto& p : params_.params()) {
    tensors.push_back({{"name", p.name},
                       {"rows", p.tensor.rows()},
                       {"cols", p.tensor.cols()}});
  }
  header["tensors"] = std::move(tensors);
  const std::string text = header.dump();

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write checkpoint '{}'", path));
    out.write(kMagic, sizeof(kMagic));
    const uint64_t size = text.size();
    out.write(reinterpret_cast<const char*>(&size), sizeof(size));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    for (const auto& p : params_.params()) {
      const nn::Matrix& m = p.tensor.value();
      out.write(reinterpret_cast<const char*>(m.data()),
                static_cast<std::streamsize>(m.size() * sizeof(double)));
    }
    if (!out) throw Error(fmt::format("short write to '{}'", tmp));
  }
  std::rename(tmp.c_str(), path.c_str());
}

std::unique_ptr<NeuralCorefModel> NeuralCorefModel::Load(
    const std::string& path, const PipelineConfig* runtime) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open checkpoint '{}'", path));
  char magic[sizeof(kMagic)];
  uint64_t size = 0;
  in.read(magic, sizeof(magic));
  in.read(reinterpret_cast<char*>(&size), sizeof(size));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0 ||
      size > (1u << 30)) {
    throw ParseError(fmt::format("'{}' is not a corefcs checkpoint", path));
  }
  std::string text(size, '\0');
  in.read(text.data(), static_cast<std::streamsize>(size));
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("{}: bad checkpoint header: {}", path,
                                 e.what()));
  }
  PipelineConfig config = ParseConfig(header.at("config").dump());
  if (runtime) {
    config.filters = runtime->filters;
    config.agent = runtime->agent;
    config.llm = runtime->llm;
    config.data = runtime->data;
    config.model = runtime->model;
    config.base_dir = runtime->base_dir;
  }
  auto model = std::make_unique<NeuralCorefModel>(
      config, Vocabulary::FromTokens(
                  header.at("vocabulary").get<std::vector<std::string>>()));
  const auto& tensors = header.at("tensors");
  if (tensors.size() != model->params_.size()) {
    throw ParseError(fmt::format("{}: {} tensors, model expects {}", path,
                                 tensors.size(), model->params_.size()));
  }
  for (const auto& t : tensors) {
    const std::string name = t.at("name").get<std::string>();
    const nn::NamedParameter* p = model->params_.Find(name);
    const Eigen::Index rows = t.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = t.at("cols").get<Eigen::Index>();
    if (p == nullptr || p->tensor.rows() != rows || p->tensor.cols() != cols) {
      throw ParseError(fmt::format("{}: tensor '{}' ({}x{}) does not fit",
                                   path, name, rows, cols));
    }
    nn::Tensor tensor = p->tensor;
    nn::Matrix& m = tensor.mutable_value();
    in.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(m.size() * sizeof(double)));
    if (!in) throw ParseError(fmt::format("{}: truncated checkpoint", path));
  }
  return model;
}

std::unique_ptr<PlantedCorefModel> PlantedCorefModel::Load(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open fixture '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

std::unique_ptr<PlantedCorefModel> PlantedCorefModel::FromJson(
    const std::string& text) {
  auto model = std::make_unique<PlantedCorefModel>();
  try {
    const auto root = nlohmann::json::parse(text);
    for (const auto& [doc_id, doc] : root.at("documents").items()) {
      Entry& e = model->entries_[doc_id];
      for (const auto& m : doc.at("mentions")) {
        Mention mention;
        mention.start = m.at("start").get<int>();
        mention.end = m.at("end").get<int>();
        if (m.contains("p_start")) mention.p_start = m["p_start"].get<double>();
        if (m.contains("p_end")) mention.p_end = m["p_end"].get<double>();
        e.mentions.push_back(mention);
      }
      SortMentions(e.mentions);
      for (const auto& c : doc.at("clusters")) {
        std::vector<Span> spans;
        for (const auto& s : c.at("mentions")) {
          spans.push_back({s.at(0).get<int>(), s.at(1).get<int>()});
        }
        std::vector<double> probs =
            c.value("pair_probs", std::vector<double>{});
        if (!probs.empty() && probs.size() + 1 != spans.size()) {
          throw ParseError(fmt::format(
              "{}: cluster of {} mentions has {} pair_probs", doc_id,
              spans.size(), probs.size()));
        }
        e.clusters.push_back(std::move(spans));
        e.pair_probs.push_back(std::move(probs));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("bad planted-model fixture: {}", e.what()));
  }
  return model;
}

std::vector<Mention> PlantedCorefModel::Detect(const Document& doc) const {
  auto it = entries_.find(doc.doc_id);
  if (it == entries_.end()) return {};
  std::vector<Mention> out;
  for (const Mention& m : it->second.mentions) {
    Mention full = doc.MakeMention(m.start, m.end);
    full.p_start = m.p_start;
    full.p_end = m.p_end;
    out.push_back(std::move(full));
  }
  return out;
}

std::vector<Cluster> PlantedCorefModel::ClusterMentions(
    const Document& doc, std::span<const Mention> mentions) const {
  std::map<Span, const Mention*> given;
  for (const Mention& m : mentions) given[m.span()] = &m;
  std::set<Span> used;
  std::vector<Cluster> out;
  auto it = entries_.find(doc.doc_id);
  if (it != entries_.end()) {
    const Entry& e = it->second;
    for (size_t c = 0; c < e.clusters.size(); ++c) {
      Cluster cluster;
      for (size_t j = 0; j < e.clusters[c].size(); ++j) {
        auto g = given.find(e.clusters[c][j]);
        if (g == given.end() || used.count(g->first)) continue;
        // The join probability of member j is pair_probs[j - 1]; the first
        // surviving member opens the cluster and has none.
        if (!cluster.mentions.empty() && !e.pair_probs[c].empty() && j > 0) {
          cluster.pair_probs.push_back(e.pair_probs[c][j - 1]);
        }
        cluster.mentions.push_back(*g->second);
        used.insert(g->first);
      }
      if (!cluster.mentions.empty()) out.push_back(std::move(cluster));
    }
  }
  for (const Mention& m : mentions) {
    if (used.count(m.span())) continue;
    Cluster single;
    single.mentions.push_back(m);
    out.push_back(std::move(single));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Cluster& a, const Cluster& b) {
                     return a.mentions.front().span() <
                            b.mentions.front().span();
                   });
  return out;
}

std::unique_ptr<CorefModel> LoadModel(const PipelineConfig& config) {
  if (config.model.kind == "planted") {
    return PlantedCorefModel::Load(config.Resolve(config.model.fixture));
  }
  return NeuralCorefModel::Load(config.Resolve(config.model.checkpoint),
                                &config);
}

}  // namespace corefcs
