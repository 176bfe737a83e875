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

#include "srlgen/recipes.h"

#include <gtest/gtest.h>

#include "srlgen/corpus.h"
#include "srlgen/error.h"
#include "srlgen/metrics.h"
#include "srlgen/mock.h"
#include "test_util.h"

namespace srlgen {
namespace {

using srlgen_test::Detokenize;

std::shared_ptr<const SrlSentence> Fixture(std::string_view id) {
  return srlgen_test::LoadSentence("recipes.jsonl", id);
}

std::string Realize(const RecipeCandidate& c) {
  return Detokenize(MockGenerateTagged(c.perturbed).text());
}

const RecipeCandidate& OnFrame(const RecipeResult& r, int frame) {
  for (const auto& c : r.candidates)
    if (c.frame_idx == frame) return c;
  ADD_FAILURE() << "no candidate for frame " << frame;
  static RecipeCandidate none;
  return none;
}

std::shared_ptr<const SrlSentence> AgentOnly() {
  nlohmann::json rec = {
      {"tokens", {{{"text", "The"}, {"pos", "DT"}}, {{"text", "doctor"}, {"pos", "NN"}},
                  {{"text", "slept"}, {"pos", "VBD"}}, {{"text", "."}, {"pos", "."}}}},
      {"frames", {{{"verb_index", 2}, {"lemma", "sleep"},
                   {"args", {{{"tag", "ARG0"}, {"start", 0}, {"end", 2}}}}}}}};
  return std::make_shared<const SrlSentence>(SentenceFromJson(rec, "agent-only"));
}

// Each NLI strategy on its example sentence, realized by the mock.
TEST(NliPerturbTest, UntangleRelativeClause) {
  auto r = NliPerturb(Fixture("athlete-yesterday"), NliStrategy::kUntangleRelativeClause, 3);
  ASSERT_EQ(r.candidates.size(), 1u);
  const auto& c = OnFrame(r, 0);
  EXPECT_EQ(RenderProgram(c.program), "CONTEXT_DELETE_TEXT");
  EXPECT_EQ(Realize(c), "The athlete was seen by the judges yesterday");
  EXPECT_EQ(c.metadata["label"], "entailment");
  ASSERT_EQ(r.skipped.size(), 1u);
}

TEST(NliPerturbTest, ShortenCore) {
  auto r = NliPerturb(Fixture("athlete-yesterday"), NliStrategy::kShortenCore, 3);
  const auto& c = OnFrame(r, 1);
  EXPECT_EQ(RenderProgram(c.program), "AGENT:CHANGE_CONTENT(The athlete)");
  EXPECT_EQ(Realize(c), "The athlete called the manager.");
}

TEST(NliPerturbTest, ChangeVoice) {
  auto r = NliPerturb(Fixture("athlete-yesterday"), NliStrategy::kChangeVoice, 3);
  const auto& c = OnFrame(r, 1);
  EXPECT_EQ(Realize(c), "The manager was called by the athlete who was seen by the judges yesterday.");
  EXPECT_EQ(std::get<VerbCode>(c.perturbed.header[0]).voice, Voice::kPassive);
  EXPECT_EQ(Realize(OnFrame(r, 0)), "The judges who saw the athlete yesterday called the manager.");
}

TEST(NliPerturbTest, ReplaceCoreWithSubsequences) {
  auto r = NliPerturb(Fixture("judge-doctors"), NliStrategy::kReplaceCoreWithSubsequences, 3);
  const auto& c = OnFrame(r, 0);
  EXPECT_EQ(RenderProgram(c.program),
            "AGENT:CHANGE_CONTENT(The doctors);PATIENT:CHANGE_CONTENT(the manager)");
  EXPECT_EQ(Realize(c), "The doctors saw the manager.");
  EXPECT_EQ(c.metadata["label"], "neutral");
}

TEST(NliPerturbTest, SwapCore) {
  auto r = NliPerturb(Fixture("athlete-judges"), NliStrategy::kSwapCore, 3);
  EXPECT_EQ(Realize(OnFrame(r, 0)), "The judges who were seen by the athlete called the manager.");
  EXPECT_EQ(OnFrame(r, 0).metadata["strategy"], "swap_core");
}

TEST(NliPerturbTest, InapplicableGivesReasons) {
  auto r = NliPerturb(AgentOnly(), NliStrategy::kSwapCore, 0);
  EXPECT_TRUE(r.candidates.empty());
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_NE(r.skipped[0].find("frame 0"), std::string::npos);
  r = NliPerturb(Fixture("no-verbs"), NliStrategy::kChangeVoice, 0);
  EXPECT_TRUE(r.candidates.empty());
  EXPECT_EQ(r.skipped, std::vector<std::string>{"no predicate frames"});
}

TEST(NliPerturbTest, CandidatesAreValidAndCycleConsistent) {
  for (const auto& s : srlgen_test::LoadFixture("recipes.jsonl")) {
    auto sp = std::make_shared<const SrlSentence>(s);
    for (auto st : {NliStrategy::kUntangleRelativeClause, NliStrategy::kShortenCore,
                    NliStrategy::kChangeVoice, NliStrategy::kReplaceCoreWithSubsequences,
                    NliStrategy::kSwapCore}) {
      for (const auto& c : NliPerturb(sp, st, 5).candidates) {
        SCOPED_TRACE(s.id + " " + std::string(ToString(st)));
        EXPECT_NO_THROW(ValidatePrompt(c.perturbed));
        EXPECT_EQ(c.metadata["recipe"], ToString(st));
        EXPECT_TRUE(CycleConsistency(c.perturbed, MockGenerateTagged(c.perturbed)).all_ok());
      }
    }
  }
}

TEST(NliPerturbTest, Deterministic) {
  auto s = Fixture("athlete-yesterday");
  auto a = NliPerturb(s, NliStrategy::kChangeVoice, 9);
  auto b = NliPerturb(s, NliStrategy::kChangeVoice, 9);
  ASSERT_EQ(a.candidates.size(), b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i)
    EXPECT_EQ(a.candidates[i].ToJson(), b.candidates[i].ToJson());
}

TEST(NliLabelTest, MeaningPreservingIsEntailment) {
  EXPECT_EQ(LabelFor(NliStrategy::kUntangleRelativeClause), NliLabel::kEntailment);
  EXPECT_EQ(LabelFor(NliStrategy::kShortenCore), NliLabel::kEntailment);
  EXPECT_EQ(LabelFor(NliStrategy::kChangeVoice), NliLabel::kEntailment);
  EXPECT_EQ(LabelFor(NliStrategy::kReplaceCoreWithSubsequences), NliLabel::kNeutral);
  EXPECT_EQ(LabelFor(NliStrategy::kSwapCore), NliLabel::kNeutral);
  auto pair = MakeLabeledPair(*Fixture("judge-doctors"), NliStrategy::kSwapCore, "x");
  EXPECT_EQ(pair.label, NliLabel::kNeutral);
  EXPECT_EQ(pair.strategy, "swap_core");
  EXPECT_EQ(pair.premise, "The judge behind the manager saw the doctors .");
  EXPECT_EQ(ParseNliStrategy("shorten_core"), NliStrategy::kShortenCore);
  EXPECT_FALSE(ParseNliStrategy("shorten").has_value());
}

TEST(PpAttachmentSwapTest, ToNoun) {
  auto c = PpAttachmentSwap(Fixture("ud-breakfast"), PpDirection::kToNoun, "with");
  EXPECT_EQ(RenderProgram(c.program),
            "PATIENT:CHANGE_CONTENT(ham , bacon or sausages with),CHANGE_SPEC(partial);"
            "ADVERBIAL:DELETE");
  EXPECT_EQ(SerializeHeader(c.perturbed.header),
            "[VERB+active+present: prefer | PATIENT+partial: ham , bacon or sausages with]");
}

TEST(PpAttachmentSwapTest, ToVerb) {
  auto c = PpAttachmentSwap(Fixture("ud-boutiques"), PpDirection::kToVerb, "at");
  EXPECT_EQ(Realize(c), "It has local boutiques and a diverse range of food at more.");
  EXPECT_NE(SerializeHeader(c.perturbed.header).find("LOCATIVE+partial: at"), std::string::npos);
  EXPECT_EQ(c.metadata["banned_phrases"], nlohmann::json::array({"at all prices and styles"}));
}

TEST(PpAttachmentSwapTest, Inapplicable) {
  EXPECT_THROW(PpAttachmentSwap(Fixture("judge-doctors"), PpDirection::kToNoun, "with"),
               RecipeInapplicable);
  EXPECT_THROW(PpAttachmentSwap(Fixture("judge-doctors"), PpDirection::kToVerb, "at"),
               RecipeInapplicable);
  EXPECT_THROW(PpAttachmentSwap(Fixture("ud-breakfast"), PpDirection::kToNoun, " "),
               RecipeParameterError);
}

TEST(ContrastRecipeTest, ChangeEntity) {
  auto c = RunContrastRecipe(Fixture("boolq-deadpool"), ContrastRecipe::kChangeEntity,
                             {{"text", "his bride"}});
  EXPECT_EQ(Realize(c), "His bride has a kid in the comics?");
  EXPECT_THROW(RunContrastRecipe(Fixture("boolq-deadpool"), ContrastRecipe::kChangeEntity, {}),
               RecipeParameterError);
  EXPECT_THROW(RunContrastRecipe(Fixture("boolq-deadpool"), ContrastRecipe::kChangeEntity,
                                 {{"text", "x"}, {"role", "NOTAROLE"}}),
               RecipeParameterError);
  EXPECT_THROW(RunContrastRecipe(Fixture("boolq-deadpool"), ContrastRecipe::kChangeEntity,
                                 {{"text", "x"}, {"role", "TEMPORAL"}}),
               RecipeInapplicable);
}

TEST(ContrastRecipeTest, MatresChangeTense) {
  auto c = RunContrastRecipe(Fixture("matres-volleyball"), ContrastRecipe::kMatresChangeTense,
                             {{"tense", "past"}, {"verb", "watch"}});
  EXPECT_EQ(RenderProgram(c.program), "CHANGE_VTENSE(past)");
  EXPECT_EQ(Realize(c),
            "Volleyball is a popular sport in the area, and more than 200 people watched the "
            "game, the chief said.");
  EXPECT_THROW(RunContrastRecipe(Fixture("matres-volleyball"), ContrastRecipe::kMatresChangeTense,
                                 {{"tense", "later"}, {"verb", "watch"}}),
               RecipeParameterError);
  EXPECT_THROW(RunContrastRecipe(Fixture("matres-volleyball"), ContrastRecipe::kMatresChangeTense,
                                 {{"tense", "past"}, {"verb", "fly"}}),
               RecipeInapplicable);
  EXPECT_THROW(RunContrastRecipe(Fixture("matres-volleyball"), ContrastRecipe::kMatresChangeTense,
                                 {{"tense", "past"}, {"frame", "x"}}),
               RecipeParameterError);
}

TEST(ContrastRecipeTest, MatresChangeOrder) {
  auto c = RunContrastRecipe(Fixture("matres-volleyball"), ContrastRecipe::kMatresChangeOrder,
                             {{"verb", "say"}});
  EXPECT_EQ(RenderProgram(c.program), "PATIENT:MOVE");
  EXPECT_EQ(Realize(c),
            "The chief said Volleyball is a popular sport in the area, and more than 200 people "
            "would be watching the game.");
  EXPECT_THROW(RunContrastRecipe(Fixture("matres-volleyball"), ContrastRecipe::kMatresChangeOrder, {}),
               RecipeParameterError);
}

TEST(ContrastRecipeTest, QaSwapAnswerToAgent) {
  auto c = RunContrastRecipe(Fixture("qa-huguenots"), ContrastRecipe::kQaSwapAnswerToAgent,
                             {{"answer", "their own militia"}});
  EXPECT_EQ(RenderProgram(c.program),
            "AGENT:CHANGE_CONTENT(who);MANNER:CHANGE_CONTENT(their own militia),"
            "CHANGE_SPEC(partial)");
  EXPECT_THROW(RunContrastRecipe(Fixture("qa-huguenots"), ContrastRecipe::kQaSwapAnswerToAgent,
                                 {{"answer", "x"}, {"wh", ""}}),
               RecipeParameterError);
  EXPECT_EQ(ParseContrastRecipe("change_entity"), ContrastRecipe::kChangeEntity);
  EXPECT_FALSE(ParseContrastRecipe("change").has_value());
}

struct TransferCase {
  const char* transfer;
  const char* realized;
};

class StyleTransferTest : public ::testing::TestWithParam<TransferCase> {};

TEST_P(StyleTransferTest, Realizes) {
  auto r = StyleTransferProgram(Fixture("style-room"), GetParam().transfer, 0);
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(Realize(r.candidates[0]), GetParam().realized);
  EXPECT_NO_THROW(ValidatePrompt(r.candidates[0].perturbed));
}

INSTANTIATE_TEST_SUITE_P(
    Room, StyleTransferTest,
    ::testing::Values(
        TransferCase{"to_past", "In the quiet room, the old doctor gently comforted the athlete."},
        TransferCase{"to_present", "In the quiet room, the old doctor gently comforts the athlete."},
        TransferCase{"adj_adv_removal", "In the room, the doctor will comfort the athlete."},
        TransferCase{"pp_front_to_back",
                     "The old doctor gently will comfort the athlete in the quiet room."},
        TransferCase{"pp_removal", "The old doctor gently will comfort the athlete."},
        TransferCase{"active_to_passive",
                     "In the quiet room, the athlete gently will be comforted by the old doctor."},
        TransferCase{"to_past+active_to_passive",
                     "In the quiet room, the athlete gently was comforted by the old doctor."}));

TEST(StyleTransferTest, SkipsAndErrors) {
  auto r = StyleTransferProgram(Fixture("style-room"), "passive_to_active", 0);
  EXPECT_TRUE(r.candidates.empty());
  EXPECT_EQ(r.skipped.size(), 1u);
  EXPECT_THROW(StyleTransferProgram(Fixture("style-room"), "to_mars", 0), RecipeParameterError);
  EXPECT_THROW(StyleTransferProgram(Fixture("style-room"), "to_past+to_future", 0),
               RecipeParameterError);
  EXPECT_THROW(StyleTransferProgram(Fixture("style-room"), "to_past+pp_removal+active_to_passive", 0),
               RecipeParameterError);
}

TEST(StyleTransferTest, RemovalNeedsPos) {
  nlohmann::json rec = SentenceToJson(*Fixture("style-room"));
  for (auto& t : rec["tokens"]) t.erase("pos");
  auto s = std::make_shared<const SrlSentence>(SentenceFromJson(rec, "no-pos"));
  EXPECT_THROW(StyleTransferProgram(s, "adj_adv_removal", 0), FeatureDetectionError);
}

TEST(RecipeParamsTest, Parse) {
  EXPECT_EQ(ParseRecipeParams(""), RecipeParams{});
  EXPECT_EQ(ParseRecipeParams("a=1,b=x y"), (RecipeParams{{"a", "1"}, {"b", "x y"}}));
  EXPECT_EQ(ParseRecipeParams("text=ham, bacon,role=PATIENT"),
            (RecipeParams{{"text", "ham, bacon"}, {"role", "PATIENT"}}));
  EXPECT_THROW(ParseRecipeParams("oops"), RecipeParameterError);
  EXPECT_THROW(ParseRecipeParams("=1"), RecipeParameterError);
}

TEST(RunRecipeTest, Dispatch) {
  EXPECT_EQ(RecipeNames().size(), 11u);
  auto r = RunRecipe("pp_attachment_swap", Fixture("judge-doctors"),
                     {{"direction", "to_noun"}, {"preposition", "with"}}, 0);
  EXPECT_TRUE(r.candidates.empty());
  EXPECT_EQ(r.skipped.size(), 1u);
  EXPECT_THROW(RunRecipe("pp_attachment_swap", Fixture("judge-doctors"),
                         {{"direction", "sideways"}, {"preposition", "with"}}, 0),
               RecipeParameterError);
  EXPECT_THROW(RunRecipe("nope", Fixture("judge-doctors"), {}, 0), RecipeParameterError);
  r = RunRecipe("style_transfer", Fixture("style-room"), {{"transfer", "to_past"}}, 0);
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.candidates[0].metadata["recipe"], "style_transfer");
  nlohmann::json j = r.candidates[0].ToJson();
  EXPECT_TRUE(j.contains("program"));
}

}  // namespace
}  // namespace srlgen
