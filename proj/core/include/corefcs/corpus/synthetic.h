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


// Synthetic corpus with planted coreference patterns, used for toy-scale
// training, benchmarks and tests.
//
// Every document introduces one male person, one female person and one
// definite object. Repeated names, gendered pronouns and repeated "the
// <noun>" phrases corefer with their entity; indefinite "a <noun>" phrases
// are not mentions.

#ifndef COREFCS_CORPUS_SYNTHETIC_H_
#define COREFCS_CORPUS_SYNTHETIC_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "corefcs/corpus/document.h"

namespace corefcs {

struct ToyCorpusOptions {
  int min_sentences = 4;
  int max_sentences = 6;
};

Document GenerateToyDocument(const std::string& doc_id, std::mt19937_64& rng,
                             const ToyCorpusOptions& options = {});

// Documents named "<prefix>_000", "<prefix>_001", ...
std::vector<Document> GenerateToyCorpus(int count, uint64_t seed,
                                        const std::string& prefix,
                                        const ToyCorpusOptions& options = {});

// Every word the generator can emit.
std::vector<std::string> ToyVocabulary();

}  // namespace corefcs

#endif  // COREFCS_CORPUS_SYNTHETIC_H_
