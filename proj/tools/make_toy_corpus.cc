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


// Writes the synthetic toy corpus as CoNLL files.

#include <exception>
#include <string>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "corefcs/corpus/conll.h"
#include "corefcs/corpus/synthetic.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic toy coreference corpus"};
  std::string output;
  std::string prefix = "toy";
  int count = 50;
  uint64_t seed = 1;
  app.add_option("--output", output, "CoNLL output path")->required();
  app.add_option("--count", count, "Number of documents")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--prefix", prefix, "Document id prefix")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  try {
    corefcs::WriteConll(output,
                        corefcs::GenerateToyCorpus(count, seed, prefix));
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
