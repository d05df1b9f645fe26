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

// JSONL prediction files. One object per line:
//   {"doc_id":"d","clusters":[[[s,e],...],...],"pair_probs":[[p,...],...]}
// Spans are inclusive token indices.

#ifndef COREFCS_CORPUS_PREDICTIONS_H_
#define COREFCS_CORPUS_PREDICTIONS_H_

#include <map>
#include <string>
#include <vector>

#include "corefcs/corpus/document.h"

namespace corefcs {

struct DocumentPrediction {
  std::string doc_id;
  SpanPartition clusters;
  std::vector<std::vector<double>> pair_probs;

  bool operator==(const DocumentPrediction&) const = default;
};

DocumentPrediction ToPrediction(const std::string& doc_id,
                                const std::vector<Cluster>& clusters);

std::string PredictionToJsonLine(const DocumentPrediction& prediction);
// Throws ParseError on malformed JSON and ValidationError on bad spans.
DocumentPrediction PredictionFromJsonLine(const std::string& line);

void WritePredictions(const std::string& path,
                      const std::vector<DocumentPrediction>& predictions);
std::vector<DocumentPrediction> ReadPredictions(const std::string& path);

// Checks every span against the token count of its document. Documents
// missing from `doc_sizes` are reported as validation errors too.
void ValidatePredictions(const std::vector<DocumentPrediction>& predictions,
                         const std::map<std::string, int>& doc_sizes);

}  // namespace corefcs

#endif  // COREFCS_CORPUS_PREDICTIONS_H_
