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


#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "corefcs/base/error.h"
#include "corefcs/corpus/conll.h"
#include "corefcs/corpus/document.h"
#include "corefcs/corpus/predictions.h"
#include "corefcs/corpus/segment.h"
#include "corefcs/corpus/synthetic.h"
#include "testing/generators.h"

namespace corefcs {
namespace {

using testing::Canonical;

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() /
          fmt::format("corefcs_corpus_{}_{}", ::getpid(), name))
      .string();
}

Document DocWithEnds(int m, std::vector<int> ends) {
  Document doc;
  doc.doc_id = "d";
  for (int i = 0; i < m; ++i) doc.tokens.push_back(fmt::format("w{}", i));
  doc.sentence_ends = std::move(ends);
  return doc;
}

TEST(ConllTest, PairsOpenAndCloseAcrossSentences) {
  const std::string text =
      "#begin document (d); part 000\n"
      "d 0 0 Mary - - - - - - * (0\n"
      "d 0 1 Ann - - - - - - * -\n"
      "\n"
      "d 0 0 she - - - - - - * 0)\n"
      "#end document\n";
  const std::vector<Document> docs = ParseConllText(text);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].size(), 3);
  EXPECT_EQ(docs[0].sentence_ends, (std::vector<int>{1, 2}));
  EXPECT_EQ(docs[0].GoldPartition(), (SpanPartition{{{0, 2}}}));
  // The span crosses a sentence break, so it is flagged but kept.
  EXPECT_EQ(docs[0].flagged_spans, (std::vector<Span>{{0, 2}}));
}

TEST(ConllTest, TwoSentenceFixture) {
  const std::vector<Document> docs =
      ParseConll(COREFCS_TEST_DATA_DIR "/two_sentences.conll");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].doc_id, "two_000");
  EXPECT_EQ(docs[0].sentence_ends, (std::vector<int>{2, 4}));
  EXPECT_EQ(docs[0].GoldPartition(), (SpanPartition{{{0, 2}}}));
  EXPECT_TRUE(docs[0].flagged_spans.empty());
}

TEST(ConllTest, NoAnnotationGivesNoClusters) {
  const std::vector<Document> docs = ParseConllText(
      "#begin document (d); part 000\nd 0 0 a - - - - - - * -\n"
      "d 0 1 b - - - - - - * -\n#end document\n");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_TRUE(docs[0].gold_clusters.empty());
}

TEST(ConllTest, NestedOpenersRecoverBothSpans) {
  // Bracket stack by hand: token 0 pushes cluster 1 and cluster 2, token 2
  // pops cluster 2 -> [0,2], token 4 pops cluster 1 -> [0,4].
  const std::vector<Document> docs =
      ParseConll(COREFCS_TEST_DATA_DIR "/nested.conll");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(Canonical(docs[0].GoldPartition()),
            Canonical({{{0, 4}}, {{0, 2}}}));
}

TEST(ConllTest, EmptyInputGivesNoDocuments) {
  EXPECT_TRUE(ParseConllText("").empty());
  const std::string path = TempPath("empty.conll");
  { std::ofstream out(path); }
  EXPECT_TRUE(ParseConll(path).empty());
  std::remove(path.c_str());
}

TEST(ConllTest, MalformedBracketNamesTheLine) {
  const std::string text =
      "#begin document (d); part 000\n"
      "d 0 0 a - - - - - - * -\n"
      "d 0 1 b - - - - - - * 3)\n"
      "#end document\n";
  try {
    ParseConllText(text, "bad.conll");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.conll:3"), std::string::npos)
        << e.what();
  }
}

TEST(ConllTest, UnclosedBracketIsAnError) {
  EXPECT_THROW(ParseConllText("#begin document (d); part 000\n"
                              "d 0 0 a - - - - - - * (3\n#end document\n"),
               ParseError);
}

TEST(ConllTest, CompactTwoColumnForm) {
  const std::vector<Document> docs = ParseConllText(
      "#begin document (d)\nJohn (0)\nleft -\n\nhe (0)\n#end document\n");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].tokens, (std::vector<std::string>{"John", "left", "he"}));
  EXPECT_EQ(docs[0].GoldPartition(), (SpanPartition{{{0, 0}, {2, 2}}}));
}

TEST(ConllTest, LastTokenIsAlwaysEos) {
  // No trailing blank line before #end document.
  const std::vector<Document> docs = ParseConllText(
      "#begin document (d)\na -\nb -\n#end document\n");
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].sentence_ends, (std::vector<int>{1}));
}

TEST(ConllPropertyTest, RenderThenParseRecoversClusters) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const Document doc =
        testing::RandomDocument(rng, {}, fmt::format("doc{}", trial));
    const std::vector<Document> parsed = ParseConllText(RenderConll(doc));
    ASSERT_EQ(parsed.size(), 1u);
    EXPECT_EQ(parsed[0].doc_id, doc.doc_id);
    EXPECT_EQ(parsed[0].tokens, doc.tokens);
    EXPECT_EQ(parsed[0].sentence_ends, doc.sentence_ends);
    EXPECT_EQ(Canonical(parsed[0].GoldPartition()),
              Canonical(doc.GoldPartition()))
        << RenderConll(doc);
  }
}

TEST(SegmentTest, IndependentExactDivision) {
  const Document doc = DocWithEnds(10, {9});
  const std::vector<Segment> segs =
      SegmentDocument(doc, SegmentStrategy::kIndependent, 7);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].start, 0);
  EXPECT_EQ(segs[0].end, 5);
  EXPECT_EQ(segs[1].start, 5);
  EXPECT_EQ(segs[1].end, 10);
  EXPECT_EQ(segs[1].seg_index, 1);
  EXPECT_TRUE(segs[0].has_cls && segs[0].has_sep);
}

TEST(SegmentTest, OverlappingUsesHalfPayloadStride) {
  // Payload 5, stride floor(5 / 2) = 2.
  const Document doc = DocWithEnds(10, {9});
  const std::vector<Segment> segs =
      SegmentDocument(doc, SegmentStrategy::kOverlapping, 7);
  std::vector<std::pair<int, int>> ranges;
  for (const Segment& s : segs) ranges.push_back({s.start, s.end});
  EXPECT_EQ(ranges, (std::vector<std::pair<int, int>>{
                        {0, 5}, {2, 7}, {4, 9}, {6, 10}}));
}

TEST(SegmentTest, ShortDocumentIsOneSegment) {
  const Document doc = DocWithEnds(3, {2});
  for (SegmentStrategy s :
       {SegmentStrategy::kIndependent, SegmentStrategy::kOverlapping}) {
    const std::vector<Segment> segs = SegmentDocument(doc, s, 512);
    ASSERT_EQ(segs.size(), 1u);
    EXPECT_EQ(segs[0].start, 0);
    EXPECT_EQ(segs[0].end, 3);
  }
}

TEST(SegmentTest, WindowWithoutPayloadIsConfigError) {
  const Document doc = DocWithEnds(3, {2});
  EXPECT_THROW(SegmentDocument(doc, SegmentStrategy::kIndependent, 1),
               ConfigError);
  EXPECT_THROW(SegmentDocument(doc, SegmentStrategy::kIndependent, 2),
               ConfigError);
  EXPECT_NO_THROW(SegmentDocument(doc, SegmentStrategy::kIndependent, 3));
}

TEST(SegmentPropertyTest, CoverageDisjointnessAndOverlap) {
  for (int m = 1; m <= 40; ++m) {
    const Document doc = DocWithEnds(m, {m - 1});
    for (int t = 3; t <= 20; ++t) {
      const int payload = t - 2;
      const int stride = std::max(1, payload / 2);
      for (SegmentStrategy strategy :
           {SegmentStrategy::kIndependent, SegmentStrategy::kOverlapping}) {
        const std::vector<Segment> segs = SegmentDocument(doc, strategy, t);
        std::vector<int> covered(m, 0);
        for (size_t i = 0; i < segs.size(); ++i) {
          const Segment& s = segs[i];
          ASSERT_LE(s.length(), payload);
          ASSERT_GT(s.length(), 0);
          EXPECT_EQ(s.seg_index, static_cast<int>(i));
          for (int k = s.start; k < s.end; ++k) ++covered[k];
          if (i == 0) continue;
          const Segment& prev = segs[i - 1];
          if (strategy == SegmentStrategy::kIndependent) {
            EXPECT_EQ(s.start, prev.end);
          } else {
            EXPECT_EQ(s.start - prev.start, stride);
            if (prev.length() == payload) {
              EXPECT_EQ(prev.end - s.start, payload - stride);
            }
          }
        }
        for (int k = 0; k < m; ++k) ASSERT_GE(covered[k], 1) << m << " " << t;
        if (strategy == SegmentStrategy::kIndependent) {
          EXPECT_EQ(static_cast<int>(segs.size()),
                    (m + payload - 1) / payload);
          for (int k = 0; k < m; ++k) EXPECT_EQ(covered[k], 1);
        }
        EXPECT_EQ(segs.back().end, m);
      }
    }
  }
}

TEST(EosDistanceTest, Examples) {
  const Document doc = DocWithEnds(10, {4, 9});
  EXPECT_EQ(EosDistance(doc, 2), 2);
  EXPECT_EQ(EosDistance(doc, 4), 0);
  EXPECT_EQ(EosDistance(doc, 7), 2);
}

TEST(EosDistancePropertyTest, ZeroExactlyAtSentenceEnds) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Document doc = testing::RandomDocument(rng);
    const std::set<int> ends(doc.sentence_ends.begin(),
                             doc.sentence_ends.end());
    for (int t = 0; t < doc.size(); ++t) {
      const int d = EosDistance(doc, t);
      EXPECT_GE(d, 0);
      EXPECT_EQ(d == 0, ends.count(t) == 1);
      EXPECT_TRUE(doc.IsEos(t + d));
    }
  }
}

TEST(DocumentTest, ValidateRejectsBrokenStructure) {
  Document doc = DocWithEnds(5, {2, 4});
  EXPECT_NO_THROW(doc.Validate());
  doc.sentence_ends = {2, 3};
  EXPECT_THROW(doc.Validate(), ValidationError);
  doc.sentence_ends = {3, 2, 4};
  EXPECT_THROW(doc.Validate(), ValidationError);
  Document empty;
  EXPECT_THROW(empty.Validate(), ValidationError);
}

TEST(DocumentTest, MentionTextIsJoinedTokens) {
  const Document doc = DocWithEnds(5, {4});
  const Mention m = doc.MakeMention(1, 3);
  EXPECT_EQ(m.text, "w1 w2 w3");
  EXPECT_EQ(doc.SentenceOf(3), 0);
}

TEST(PredictionsTest, EmptyClusterListLine) {
  DocumentPrediction p;
  p.doc_id = "d";
  EXPECT_EQ(PredictionToJsonLine(p),
            R"({"doc_id":"d","clusters":[],"pair_probs":[]})");
}

TEST(PredictionsTest, RoundTripIsIdentity) {
  DocumentPrediction p;
  p.doc_id = "doc";
  p.clusters = {{{0, 1}, {4, 4}}, {{2, 2}, {6, 8}, {9, 9}}};
  p.pair_probs = {{0.75}, {0.5, 0.125}};
  EXPECT_EQ(PredictionFromJsonLine(PredictionToJsonLine(p)), p);

  const std::string path = TempPath("pred.jsonl");
  DocumentPrediction q;
  q.doc_id = "other";
  WritePredictions(path, {p, q});
  const std::vector<DocumentPrediction> read = ReadPredictions(path);
  ASSERT_EQ(read.size(), 2u);
  EXPECT_EQ(read[0], p);
  EXPECT_EQ(read[1], q);
  std::remove(path.c_str());
}

TEST(PredictionsPropertyTest, RandomRoundTrips) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    DocumentPrediction p;
    p.doc_id = fmt::format("d{}", trial);
    p.clusters =
        testing::RandomPartition(rng, testing::SpanUniverse(12), 4, 0.7);
    for (const auto& c : p.clusters) {
      std::vector<double> probs;
      for (size_t i = 1; i < c.size(); ++i) {
        probs.push_back(testing::UniformReal(rng, 0.5, 1.0));
      }
      p.pair_probs.push_back(probs);
    }
    EXPECT_EQ(PredictionFromJsonLine(PredictionToJsonLine(p)), p);
  }
}

TEST(PredictionsTest, ReversedSpanIsValidationError) {
  EXPECT_THROW(PredictionFromJsonLine(
                   R"({"doc_id":"d","clusters":[[[5,3]]],"pair_probs":[[]]})"),
               ValidationError);
  const std::string path = TempPath("bad.jsonl");
  {
    std::ofstream out(path);
    out << R"({"doc_id":"d","clusters":[[[5,3]]],"pair_probs":[[]]})" << "\n";
  }
  EXPECT_THROW(ReadPredictions(path), ValidationError);
  std::remove(path.c_str());
}

TEST(PredictionsTest, UnknownKeysAreIgnored) {
  const DocumentPrediction p = PredictionFromJsonLine(
      R"({"doc_id":"d","clusters":[[[0,0]]],"pair_probs":[[]],"extra":1})");
  EXPECT_EQ(p.clusters, (SpanPartition{{{0, 0}}}));
}

TEST(PredictionsTest, ValidateAgainstDocumentSizes) {
  DocumentPrediction p;
  p.doc_id = "d";
  p.clusters = {{{0, 4}}};
  p.pair_probs = {{}};
  EXPECT_NO_THROW(ValidatePredictions({p}, {{"d", 5}}));
  EXPECT_THROW(ValidatePredictions({p}, {{"d", 4}}), ValidationError);
  EXPECT_THROW(ValidatePredictions({p}, {{"e", 5}}), ValidationError);
}

TEST(SyntheticCorpusTest, DeterministicAndValid) {
  const std::vector<Document> a = GenerateToyCorpus(20, 5, "t");
  const std::vector<Document> b = GenerateToyCorpus(20, 5, "t");
  const std::vector<std::string> vocab_list = ToyVocabulary();
  const std::set<std::string> vocab(vocab_list.begin(), vocab_list.end());
  ASSERT_EQ(a.size(), 20u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(RenderConll(a[i]), RenderConll(b[i]));
    EXPECT_NO_THROW(a[i].Validate());
    EXPECT_TRUE(a[i].flagged_spans.empty());
    EXPECT_FALSE(a[i].gold_clusters.empty());
    for (const std::string& t : a[i].tokens) EXPECT_TRUE(vocab.count(t)) << t;
  }
  EXPECT_NE(RenderConll(GenerateToyCorpus(1, 6, "t")[0]),
            RenderConll(GenerateToyCorpus(1, 5, "t")[0]));
}

TEST(SyntheticCorpusTest, CommittedToyCorpusMatchesGenerator) {
  std::ifstream in(COREFCS_DATA_DIR "/toy/train.conll", std::ios::binary);
  const std::string committed((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
  std::string generated;
  for (const Document& d : GenerateToyCorpus(50, 1, "train")) {
    generated += RenderConll(d);
  }
  EXPECT_EQ(committed, generated);
}

}  // namespace
}  // namespace corefcs
