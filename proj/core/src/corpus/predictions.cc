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

#include "corefcs/corpus/predictions.h"

#include <fstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "corefcs/base/error.h"
#include "json.hpp"

namespace corefcs {
namespace {

using ordered_json = nlohmann::ordered_json;

}  // namespace

DocumentPrediction ToPrediction(const std::string& doc_id,
                                const std::vector<Cluster>& clusters) {
  DocumentPrediction p;
  p.doc_id = doc_id;
  for (const Cluster& c : clusters) {
    p.clusters.push_back(c.spans());
    p.pair_probs.push_back(c.pair_probs);
  }
  return p;
}

std::string PredictionToJsonLine(const DocumentPrediction& prediction) {
  ordered_json j;
  j["doc_id"] = prediction.doc_id;
  ordered_json clusters = ordered_json::array();
  for (const auto& cluster : prediction.clusters) {
    ordered_json spans = ordered_json::array();
    for (const Span& s : cluster) spans.push_back({s.start, s.end});
    clusters.push_back(std::move(spans));
  }
  j["clusters"] = std::move(clusters);
  ordered_json probs = ordered_json::array();
  for (const auto& ps : prediction.pair_probs) probs.push_back(ps);
  j["pair_probs"] = std::move(probs);
  return j.dump();
}

DocumentPrediction PredictionFromJsonLine(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("invalid prediction JSON: {}", e.what()));
  }
  if (!j.is_object()) throw ParseError("prediction line is not an object");
  for (const auto& item : j.items()) {
    if (item.key() != "doc_id" && item.key() != "clusters" &&
        item.key() != "pair_probs") {
      spdlog::warn("ignoring unknown prediction key '{}'", item.key());
    }
  }
  DocumentPrediction p;
  try {
    p.doc_id = j.at("doc_id").get<std::string>();
    for (const auto& cluster : j.at("clusters")) {
      std::vector<Span> spans;
      for (const auto& s : cluster) {
        if (!s.is_array() || s.size() != 2) {
          throw ValidationError(
              fmt::format("{}: span must be [start, end]", p.doc_id));
        }
        Span span{s[0].get<int>(), s[1].get<int>()};
        if (span.start < 0 || span.start > span.end) {
          throw ValidationError(fmt::format("{}: invalid span [{}, {}]",
                                            p.doc_id, span.start, span.end));
        }
        spans.push_back(span);
      }
      p.clusters.push_back(std::move(spans));
    }
    if (j.contains("pair_probs")) {
      for (const auto& ps : j.at("pair_probs")) {
        p.pair_probs.push_back(ps.get<std::vector<double>>());
      }
    } else {
      p.pair_probs.resize(p.clusters.size());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("malformed prediction: {}", e.what()));
  }
  if (p.pair_probs.size() != p.clusters.size()) {
    throw ValidationError(fmt::format(
        "{}: {} clusters but {} pair_probs lists", p.doc_id, p.clusters.size(),
        p.pair_probs.size()));
  }
  return p;
}

void WritePredictions(const std::string& path,
                      const std::vector<DocumentPrediction>& predictions) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(fmt::format("cannot write '{}'", path));
  for (const DocumentPrediction& p : predictions) {
    out << PredictionToJsonLine(p) << '\n';
  }
}

std::vector<DocumentPrediction> ReadPredictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", path));
  std::vector<DocumentPrediction> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(PredictionFromJsonLine(line));
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("{}:{}: {}", path, line_no, e.what()));
    } catch (const ParseError& e) {
      throw ParseError(fmt::format("{}:{}: {}", path, line_no, e.what()));
    }
  }
  return out;
}

void ValidatePredictions(const std::vector<DocumentPrediction>& predictions,
                         const std::map<std::string, int>& doc_sizes) {
  for (const DocumentPrediction& p : predictions) {
    auto it = doc_sizes.find(p.doc_id);
    if (it == doc_sizes.end()) {
      throw ValidationError(
          fmt::format("prediction for unknown document '{}'", p.doc_id));
    }
    for (const auto& cluster : p.clusters) {
      for (const Span& s : cluster) {
        if (s.start < 0 || s.start > s.end || s.end >= it->second) {
          throw ValidationError(fmt::format(
              "{}: span [{}, {}] outside {} tokens", p.doc_id, s.start, s.end,
              it->second));
        }
      }
    }
  }
}

}  // namespace corefcs
