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

#ifndef SRLGEN_MORPHOLOGY_H_
#define SRLGEN_MORPHOLOGY_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srlgen/srl.h"

namespace srlgen {

// Rule-based English verb inflection with a table of common irregular verbs.
std::string ThirdSingular(std::string_view lemma);
std::string PastTense(std::string_view lemma);
std::string PastParticiple(std::string_view lemma);
std::string PresentParticiple(std::string_view lemma);

// Best-effort inverse of the inflection rules.
std::string GuessLemma(std::string_view word);

// Naive number detection for a subject phrase.
bool IsPluralPhrase(std::span<const std::string> words);

// Verb group realizing (lemma, voice, tense), e.g. "was comforted",
// "will comfort", "comforts".
std::vector<std::string> ConjugateVerb(std::string_view lemma, Voice voice,
                                       Tense tense, bool plural_subject);

// POS-tags a verb group whose last word is the predicate. `lemma_hint`
// disambiguates the predicate's lemma when it is one of the hint's forms.
std::vector<Token> TagVerbGroup(std::span<const std::string> words,
                                std::optional<std::string_view> lemma_hint = {});

// Voice/tense/lemma of a bare verb group via TagVerbGroup and
// DetectVerbFeatures.
VerbFeatures AnalyzeVerbGroup(std::span<const std::string> words,
                              std::optional<std::string_view> lemma_hint = {});

}  // namespace srlgen

#endif  // SRLGEN_MORPHOLOGY_H_
