//
// Copyright 2026 The srlgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SRLGEN_CORPUS_H_
#define SRLGEN_CORPUS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "srlgen/srl.h"

namespace srlgen {

struct CorpusIssue {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct Corpus {
  std::vector<SrlSentence> sentences;
  std::vector<CorpusIssue> warnings;
  // Records skipped as a whole (bad spans, failed feature detection, ...).
  std::vector<CorpusIssue> rejected;
};

// Parses JSON Lines, one sentence record per line; blank lines are ignored.
// A line that is not a JSON object with a "tokens" array throws ParseError
// carrying the line number. Records that decode but violate the data model
// are rejected individually and reported in `rejected`.
Corpus ParseCorpus(std::string_view bytes);

// Decodes one record. Throws Error subclasses for record-level problems;
// warnings about dropped arguments are appended to `warnings`.
SrlSentence SentenceFromJson(const nlohmann::json& record, std::string id,
                             std::vector<std::string>* warnings = nullptr);

// Inverse of SentenceFromJson. Frames always carry the resolved lemma,
// voice, tense and aux_indices so a round trip needs no POS tags.
nlohmann::json SentenceToJson(const SrlSentence& sentence);

}  // namespace srlgen

#endif  // SRLGEN_CORPUS_H_
