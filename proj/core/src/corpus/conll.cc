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

#include "corefcs/corpus/conll.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "corefcs/base/error.h"

namespace corefcs {
namespace {

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\r';
  });
}

// "#begin document (bc/cctv/00/cctv_0001); part 000" -> doc id and genre.
void ParseBeginLine(std::string_view line, Document& doc) {
  std::string_view rest = line.substr(std::string_view("#begin document").size());
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  std::string name;
  std::string part;
  if (!rest.empty() && rest.front() == '(') {
    const size_t close = rest.find(')');
    name = std::string(rest.substr(1, close == std::string_view::npos
                                          ? std::string_view::npos
                                          : close - 1));
    const size_t part_pos = rest.find("part");
    if (part_pos != std::string_view::npos) {
      std::string_view p = rest.substr(part_pos + 4);
      while (!p.empty() && p.front() == ' ') p.remove_prefix(1);
      while (!p.empty() && (p.back() == ' ' || p.back() == '\r')) {
        p.remove_suffix(1);
      }
      part = std::string(p);
    }
  } else {
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\r')) {
      rest.remove_suffix(1);
    }
    name = std::string(rest);
  }
  doc.doc_id = part.empty() ? name : name + "_" + part;
  const size_t slash = name.find('/');
  if (slash != std::string::npos && slash > 0) {
    doc.genre = name.substr(0, slash);
  }
}

class CorefColumnReader {
 public:
  CorefColumnReader(std::string_view source) : source_(source) {}

  void Consume(std::string_view cell, int token, int line_no) {
    if (cell == "-") return;
    size_t pos = 0;
    while (pos <= cell.size()) {
      size_t bar = cell.find('|', pos);
      if (bar == std::string_view::npos) bar = cell.size();
      HandleMarker(cell.substr(pos, bar - pos), token, line_no);
      pos = bar + 1;
    }
  }

  void Finish(int line_no) const {
    for (const auto& [id, starts] : open_) {
      if (!starts.empty()) {
        throw ParseError(fmt::format(
            "{}:{}: cluster {} opened at token {} was never closed", source_,
            line_no, id, starts.back()));
      }
    }
  }

  // Clusters in order of first mention.
  std::vector<std::vector<Span>> Clusters() const {
    std::vector<std::vector<Span>> out;
    for (const auto& [id, spans] : spans_) {
      std::vector<Span> sorted = spans;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      out.push_back(std::move(sorted));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
  }

 private:
  int ParseId(std::string_view digits, int line_no) const {
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError(fmt::format("{}:{}: malformed coreference marker '{}'",
                                   source_, line_no, digits));
    }
    return std::stoi(std::string(digits));
  }

  void HandleMarker(std::string_view marker, int token, int line_no) {
    if (marker.empty()) {
      throw ParseError(
          fmt::format("{}:{}: empty coreference marker", source_, line_no));
    }
    const bool opens = marker.front() == '(';
    const bool closes = marker.back() == ')';
    std::string_view body = marker;
    if (opens) body.remove_prefix(1);
    if (closes && !body.empty()) body.remove_suffix(1);
    if (!opens && !closes) {
      throw ParseError(fmt::format("{}:{}: malformed coreference marker '{}'",
                                   source_, line_no, marker));
    }
    const int id = ParseId(body, line_no);
    if (opens && closes) {
      spans_[id].push_back({token, token});
    } else if (opens) {
      open_[id].push_back(token);
    } else {
      auto it = open_.find(id);
      if (it == open_.end() || it->second.empty()) {
        throw ParseError(fmt::format(
            "{}:{}: cluster {} closed without a matching open bracket",
            source_, line_no, id));
      }
      spans_[id].push_back({it->second.back(), token});
      it->second.pop_back();
    }
  }

  std::string_view source_;
  std::map<int, std::vector<int>> open_;
  std::map<int, std::vector<Span>> spans_;
};

Document FinishDocument(Document doc, const CorefColumnReader& reader,
                        int line_no, std::string_view source) {
  reader.Finish(line_no);
  if (doc.tokens.empty()) {
    throw ParseError(fmt::format("{}:{}: document '{}' has no tokens", source,
                                 line_no, doc.doc_id));
  }
  if (doc.sentence_ends.empty() || doc.sentence_ends.back() != doc.size() - 1) {
    doc.sentence_ends.push_back(doc.size() - 1);
  }
  for (std::vector<Span>& spans : reader.Clusters()) {
    for (const Span& s : spans) {
      if (doc.SentenceOf(s.start) != doc.SentenceOf(s.end)) {
        doc.flagged_spans.push_back(s);
      }
    }
    doc.gold_clusters.push_back(MakeCluster(doc, std::move(spans)));
  }
  return doc;
}

}  // namespace

std::vector<Document> ParseConll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConllText(buffer.str(), path);
}

std::vector<Document> ParseConllText(std::string_view text,
                                     std::string_view source) {
  std::vector<Document> docs;
  std::optional<Document> current;
  std::optional<CorefColumnReader> reader;
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.starts_with("#begin document")) {
      if (current) {
        throw ParseError(fmt::format("{}:{}: nested #begin document", source,
                                     line_no));
      }
      current.emplace();
      reader.emplace(source);
      ParseBeginLine(line, *current);
      continue;
    }
    if (line.starts_with("#end document")) {
      if (!current) {
        throw ParseError(fmt::format("{}:{}: #end document without #begin",
                                     source, line_no));
      }
      docs.push_back(FinishDocument(std::move(*current), *reader, line_no,
                                    source));
      current.reset();
      reader.reset();
      continue;
    }
    if (!line.empty() && line.front() == '#') continue;
    if (IsBlank(line)) {
      if (current && !current->tokens.empty() &&
          (current->sentence_ends.empty() ||
           current->sentence_ends.back() != current->size() - 1)) {
        current->sentence_ends.push_back(current->size() - 1);
      }
      continue;
    }
    if (!current) {
      throw ParseError(fmt::format("{}:{}: token line outside a document",
                                   source, line_no));
    }
    const std::vector<std::string_view> cols = SplitWhitespace(line);
    std::string_view word;
    if (cols.size() >= 4) {
      word = cols[3];
    } else if (cols.size() == 2) {
      word = cols[0];
    } else {
      throw ParseError(fmt::format("{}:{}: expected 2 or >= 4 columns, got {}",
                                   source, line_no, cols.size()));
    }
    const int token = current->size();
    current->tokens.emplace_back(word);
    reader->Consume(cols.back(), token, line_no);
  }
  if (current) {
    throw ParseError(fmt::format("{}:{}: missing #end document for '{}'",
                                 source, line_no, current->doc_id));
  }
  return docs;
}

std::string RenderConll(const Document& doc) {
  // Marker cells per token.
  std::vector<std::vector<std::string>> cells(doc.tokens.size());
  for (size_t id = 0; id < doc.gold_clusters.size(); ++id) {
    for (const Mention& m : doc.gold_clusters[id].mentions) {
      if (m.start == m.end) {
        cells[m.start].push_back(fmt::format("({})", id));
      } else {
        cells[m.start].push_back(fmt::format("({}", id));
        cells[m.end].push_back(fmt::format("{})", id));
      }
    }
  }
  std::string out = fmt::format("#begin document ({})\n", doc.doc_id);
  int word_in_sentence = 0;
  for (int i = 0; i < doc.size(); ++i) {
    std::string coref;
    for (const std::string& c : cells[i]) {
      if (!coref.empty()) coref += '|';
      coref += c;
    }
    if (coref.empty()) coref = "-";
    out += fmt::format("{}\t0\t{}\t{}\t-\t-\t-\t-\t-\t-\t*\t{}\n", doc.doc_id,
                       word_in_sentence, doc.tokens[i], coref);
    ++word_in_sentence;
    if (doc.IsEos(i)) {
      out += '\n';
      word_in_sentence = 0;
    }
  }
  out += "#end document\n";
  return out;
}

void WriteConll(const std::string& path, const std::vector<Document>& docs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(fmt::format("cannot write '{}'", path));
  for (const Document& d : docs) out << RenderConll(d);
}

}  // namespace corefcs
