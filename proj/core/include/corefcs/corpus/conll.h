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

// CoNLL-2012 column format.
//
// Documents are delimited by "#begin document (<name>); part <n>" and
// "#end document". Each token line has whitespace-separated columns; the word
// is column 3 when a line has at least four columns (column 0 for the compact
// two-column "word coref" form) and the coreference annotation is the last
// column. Blank lines separate sentences. Coreference cells hold "-" or a
// '|'-separated list of "(k", "k)" and "(k)" markers.

#ifndef COREFCS_CORPUS_CONLL_H_
#define COREFCS_CORPUS_CONLL_H_

#include <string>
#include <string_view>
#include <vector>

#include "corefcs/corpus/document.h"

namespace corefcs {

std::vector<Document> ParseConll(const std::string& path);
// `source` names the input in error messages.
std::vector<Document> ParseConllText(std::string_view text,
                                     std::string_view source = "<string>");

// Renders a document with its gold clusters in the full-width column layout.
std::string RenderConll(const Document& doc);
void WriteConll(const std::string& path, const std::vector<Document>& docs);

}  // namespace corefcs

#endif  // COREFCS_CORPUS_CONLL_H_
