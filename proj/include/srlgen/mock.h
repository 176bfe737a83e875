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

#ifndef SRLGEN_MOCK_H_
#define SRLGEN_MOCK_H_

#include <string>
#include <string_view>
#include <vector>

#include "srlgen/prompt.h"
#include "srlgen/srl.h"

namespace srlgen {

// Fixed filler vocabulary of the mock generator. A partial keyword gains
// one token and a sparse keyword six, so the realized span re-classifies to
// the coded specificity.
inline constexpr std::string_view kPartialFiller = "more";
inline constexpr std::string_view kSparseFiller = "and some more of the same";

// Placeholder phrase realizing a '*' keyword for `role`.
std::string PlaceholderFor(const RoleLabel& role);

// Deterministic stand-in for the generator. Each blank is filled with the
// code assigned to it (codes without a slot take free blanks in natural
// order, the remainder going to the last blank). Arguments realize as
// content (complete), content + kPartialFiller (partial), content +
// kSparseFiller (sparse) or the role placeholder ('*'). The verb is
// conjugated from (lemma, voice, tense); when the verb voice disagrees with
// the AGENT/PATIENT blank order, the two exchange blanks. Literals are
// copied through.
TaggedOutput MockGenerateTagged(const PromptSpec& prompt);
std::string MockGenerate(const PromptSpec& prompt);

// Inverse of the tagged rendering: one frame whose verb is the VERB segment
// (its leading words become auxiliaries) and whose args are the tagged
// segments. Throws ParseError on bad input and SchemaError when there is
// no VERB segment.
SrlSentence MockPredictSrl(std::string_view tagged_text);

// Deterministic positive pseudo-loss, growing with length and rare words.
double MockLoss(std::string_view text);

}  // namespace srlgen

#endif  // SRLGEN_MOCK_H_
