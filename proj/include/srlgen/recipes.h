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

#ifndef SRLGEN_RECIPES_H_
#define SRLGEN_RECIPES_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "srlgen/perturb.h"
#include "srlgen/prompt.h"
#include "srlgen/srl.h"

namespace srlgen {

// One compiled prompt, the program perturbing it, and the result.
struct RecipeCandidate {
  std::string recipe;
  int frame_idx = 0;
  PromptSpec prompt;
  OpProgram program;
  PromptSpec perturbed;
  nlohmann::json metadata = nlohmann::json::object();  // always carries "recipe"

  nlohmann::json ToJson() const;
};

struct RecipeResult {
  std::vector<RecipeCandidate> candidates;
  std::vector<std::string> skipped;  // one reason per frame that did not apply
};

using RecipeParams = std::map<std::string, std::string>;

// "k=v,k2=v2". A piece without '=' continues the previous value, so values
// may contain commas. Throws RecipeParameterError on a leading piece
// without '=' or an empty key.
RecipeParams ParseRecipeParams(std::string_view text);

// ---- NLI augmentation ----

enum class NliStrategy {
  kUntangleRelativeClause,
  kShortenCore,
  kChangeVoice,
  kReplaceCoreWithSubsequences,
  kSwapCore,
};

enum class NliLabel { kEntailment, kNeutral };

std::string_view ToString(NliStrategy strategy);
std::string_view ToString(NliLabel label);
std::optional<NliStrategy> ParseNliStrategy(std::string_view name);
// Meaning-preserving strategies map to entailment, the rest to neutral.
NliLabel LabelFor(NliStrategy strategy);

// One candidate per frame meeting the strategy's requirements; the
// metadata carries "label" and "strategy".
RecipeResult NliPerturb(std::shared_ptr<const SrlSentence> sentence, NliStrategy strategy,
                        std::uint64_t seed);

struct LabeledPair {
  std::string premise;
  std::string hypothesis;
  NliLabel label = NliLabel::kEntailment;
  std::string strategy;
};

LabeledPair MakeLabeledPair(const SrlSentence& premise, NliStrategy strategy,
                            std::string hypothesis);

// ---- contrast sets ----

enum class PpDirection { kToNoun, kToVerb };

// to_noun: the preposition joins the patient keyword (spec partial) and the
// verb-attached adjunct it heads is deleted. to_verb: the PP is cut from
// the patient and re-enters as an adjunct keyed by the preposition (role
// from `adjunct_role`, else guessed from the preposition). The original PP
// is listed under metadata "banned_phrases". Throws RecipeInapplicable.
RecipeCandidate PpAttachmentSwap(std::shared_ptr<const SrlSentence> sentence,
                                 PpDirection direction, std::string_view preposition,
                                 std::optional<RoleLabel> adjunct_role = std::nullopt,
                                 std::uint64_t seed = 0);

enum class ContrastRecipe {
  kChangeEntity,          // params: text, [role=AGENT], [frame|verb]
  kMatresChangeTense,     // params: tense, [frame|verb]
  kMatresChangeOrder,     // params: frame|verb
  kQaSwapAnswerToAgent,   // params: answer, [wh=who], [frame|verb]
};

std::optional<ContrastRecipe> ParseContrastRecipe(std::string_view name);

// Throws RecipeParameterError for missing/invalid params and
// RecipeInapplicable when the sentence lacks the needed structure.
RecipeCandidate RunContrastRecipe(std::shared_ptr<const SrlSentence> sentence,
                                  ContrastRecipe recipe, const RecipeParams& params,
                                  std::uint64_t seed = 0);

// ---- style transfer ----

// Transfers: to_future, to_past, to_present, adj_adv_removal,
// pp_front_to_back, pp_removal, active_to_passive, passive_to_active, and
// "+"-joined compositions of one tense transfer with one voice or PP
// transfer. One candidate per frame the transfer applies to. Throws
// RecipeParameterError for an unknown or unsupported composition and
// FeatureDetectionError when a removal transfer meets untagged tokens.
RecipeResult StyleTransferProgram(std::shared_ptr<const SrlSentence> sentence,
                                  std::string_view transfer, std::uint64_t seed = 0);

// ---- registry ----

std::vector<std::string> RecipeNames();

// Dispatches by name: the NLI strategy names, "pp_attachment_swap"
// (direction, preposition, [role]), the contrast recipe names, and
// "style_transfer" (transfer). Single-candidate recipes report
// inapplicability through `skipped`; parameter errors still throw.
RecipeResult RunRecipe(std::string_view name, std::shared_ptr<const SrlSentence> sentence,
                       const RecipeParams& params, std::uint64_t seed);

}  // namespace srlgen

#endif  // SRLGEN_RECIPES_H_
