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


#include "corefcs/corpus/synthetic.h"

#include <array>

#include <fmt/format.h>

namespace corefcs {
namespace {

constexpr std::array<const char*, 12> kMaleNames = {
    "Adam", "Boris", "Carl", "David", "Eric", "Frank",
    "Glen", "Hugo", "Ivan", "Jack", "Kurt", "Leon"};
constexpr std::array<const char*, 12> kFemaleNames = {
    "Anna", "Beth", "Cora", "Dana", "Emma", "Fay",
    "Gina", "Hana", "Iris", "Jane", "Kate", "Lily"};
constexpr std::array<const char*, 16> kNouns = {
    "book",  "car",   "house", "letter", "garden", "phone", "river", "table",
    "horse", "boat",  "lamp",  "coat",   "bridge", "radio", "apple", "chair"};
constexpr std::array<const char*, 16> kVerbs = {
    "saw",    "found", "liked", "called", "met",   "helped", "watched", "moved",
    "opened", "took",  "left",  "asked",  "knew",  "fixed",  "sold",    "kept"};
constexpr std::array<const char*, 8> kAdverbs = {
    "Yesterday", "Later", "Then",     "Suddenly",
    "Today",     "Again", "Meanwhile", "Finally"};
constexpr std::array<const char*, 10> kExtra = {
    "the", "a", ".", ",", "said", "that", "he", "him", "she", "her"};

template <typename T>
const char* Pick(const T& words, std::mt19937_64& rng) {
  return words[std::uniform_int_distribution<size_t>(0, words.size() - 1)(rng)];
}

int Uniform(int lo, int hi, std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

class DocumentBuilder {
 public:
  DocumentBuilder(std::string doc_id, std::mt19937_64& rng) : rng_(rng) {
    doc_.doc_id = std::move(doc_id);
    male_ = Pick(kMaleNames, rng);
    female_ = Pick(kFemaleNames, rng);
    noun_ = Pick(kNouns, rng);
  }

  void Sentence() {
    const int shape = Uniform(0, 3, rng_);
    if (shape == 1) {
      Word(Pick(kAdverbs, rng_));
      Word(",");
    }
    const int subject = Subject();
    if (shape == 2) {
      Word("said");
      Word("that");
      Subject();
    }
    Word(Pick(kVerbs, rng_));
    if (shape == 3) {
      Word("a");
      Word(Pick(kNouns, rng_));
    } else {
      Object(subject);
    }
    Word(".");
    doc_.sentence_ends.push_back(doc_.size() - 1);
  }

  Document Finish() {
    for (auto& spans : clusters_) {
      if (!spans.empty()) {
        doc_.gold_clusters.push_back(MakeCluster(doc_, std::move(spans)));
      }
    }
    return std::move(doc_);
  }

 private:
  enum Entity { kMale = 0, kFemale = 1, kObject = 2 };

  void Word(const std::string& w) { doc_.tokens.push_back(w); }

  // Emits a mention of `e` in subject (or object) position.
  void Refer(Entity e, bool object_position) {
    const int start = doc_.size();
    const bool introduced = !clusters_[e].empty();
    if (e == kObject) {
      Word("the");
      Word(noun_);
    } else if (introduced && Uniform(0, 1, rng_) == 0) {
      if (e == kMale) Word(object_position ? "him" : "he");
      else Word(object_position ? "her" : "she");
    } else {
      Word(e == kMale ? male_ : female_);
    }
    clusters_[e].push_back({start, doc_.size() - 1});
  }

  int Subject() {
    const int e = Uniform(0, 2, rng_);
    Refer(static_cast<Entity>(e), false);
    return e;
  }

  void Object(int subject) {
    int e = Uniform(0, 2, rng_);
    if (e == subject) e = (e + 1) % 3;
    Refer(static_cast<Entity>(e), true);
  }

  std::mt19937_64& rng_;
  Document doc_;
  std::string male_;
  std::string female_;
  std::string noun_;
  std::array<std::vector<Span>, 3> clusters_;
};

}  // namespace

Document GenerateToyDocument(const std::string& doc_id, std::mt19937_64& rng,
                             const ToyCorpusOptions& options) {
  DocumentBuilder builder(doc_id, rng);
  const int sentences =
      Uniform(options.min_sentences, options.max_sentences, rng);
  for (int i = 0; i < sentences; ++i) builder.Sentence();
  return builder.Finish();
}

std::vector<Document> GenerateToyCorpus(int count, uint64_t seed,
                                        const std::string& prefix,
                                        const ToyCorpusOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<Document> docs;
  docs.reserve(count);
  for (int i = 0; i < count; ++i) {
    docs.push_back(
        GenerateToyDocument(fmt::format("{}_{:03d}", prefix, i), rng, options));
  }
  return docs;
}

std::vector<std::string> ToyVocabulary() {
  std::vector<std::string> out;
  auto add = [&](const auto& words) {
    for (const char* w : words) out.emplace_back(w);
  };
  add(kMaleNames);
  add(kFemaleNames);
  add(kNouns);
  add(kVerbs);
  add(kAdverbs);
  add(kExtra);
  return out;
}

}  // namespace corefcs
