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

#include <gtest/gtest.h>

#include <algorithm>

#include "srlgen/error.h"
#include "srlgen/rng.h"
#include "srlgen/srl.h"
#include "srlgen/text.h"
#include "test_util.h"

namespace srlgen {
namespace {

std::vector<std::string> W(std::string_view s) { return SplitTokens(s); }

SrlSentence Tagged(std::string_view tagged_words) {
  SrlSentence s;
  int i = 0;
  for (const auto& w : SplitTokens(tagged_words)) {
    auto slash = w.rfind('/');
    Token t;
    t.text = w.substr(0, slash);
    t.pos = w.substr(slash + 1);
    t.index = i++;
    s.tokens.push_back(t);
  }
  return s;
}

TEST(MapRoleLabelTest, CoreAndModifiers) {
  EXPECT_EQ(MapRoleLabel("ARG0").name(), "AGENT");
  EXPECT_EQ(MapRoleLabel("ARG1").name(), "PATIENT");
  EXPECT_EQ(MapRoleLabel("ARGM-LOC").name(), "LOCATIVE");
  EXPECT_EQ(MapRoleLabel("ARGM-TMP").name(), "TEMPORAL");
  EXPECT_EQ(MapRoleLabel("ARGM-CAU").name(), "CAUSE");
  EXPECT_EQ(MapRoleLabel("ARGM-MNR").name(), "MANNER");
}

TEST(MapRoleLabelTest, NumberedArgsUseFunction) {
  EXPECT_EQ(MapRoleLabel("ARG2", "LOC").name(), "LOCATIVE");
  EXPECT_EQ(MapRoleLabel("ARG3").name(), "ARG3");
  EXPECT_TRUE(MapRoleLabel("ARG3").is_other());
  EXPECT_EQ(MapRoleLabel("ARG2", "PAG").name(), "ARG2");
}

TEST(MapRoleLabelTest, TotalAndIdempotentOnNames) {
  for (const auto& r : RoleLabel::Adjuncts()) EXPECT_EQ(MapRoleLabel(r.name()), r);
  EXPECT_EQ(MapRoleLabel("AGENT").name(), "AGENT");
  EXPECT_NO_THROW(MapRoleLabel("whatever-tag"));
}

TEST(RoleLabelTest, FromName) {
  EXPECT_EQ(RoleLabel::FromName("PATIENT"), RoleLabel(RoleLabel::Kind::kPatient));
  EXPECT_TRUE(RoleLabel::FromName("ARG4")->is_other());
  EXPECT_FALSE(RoleLabel::FromName("patient"));
  EXPECT_FALSE(RoleLabel::FromName("FOO"));
}

TEST(SpecificityTest, Thresholds) {
  const auto span = W("under the dim light in the operation room");
  EXPECT_EQ(ClassifySpecificity(span, span), Specificity::kComplete);
  EXPECT_EQ(ClassifySpecificity(W("dim light in the operation room"), span),
            Specificity::kPartial);
  EXPECT_EQ(ClassifySpecificity(W("operation room"), span), Specificity::kSparse);
  EXPECT_EQ(ClassifySpecificity(W("under"), span), Specificity::kSparse);
  EXPECT_EQ(ClassifySpecificity(W("under the dim"), span), Specificity::kPartial);
}

TEST(SpecificityTest, CaseFoldedAndStar) {
  EXPECT_EQ(ClassifySpecificity(W("in"), W("In the operating room")), Specificity::kPartial);
  EXPECT_EQ(ClassifySpecificity(W("*"), W("the doctor")), Specificity::kSparse);
}

TEST(SpecificityTest, NonSubsequenceIsContractViolation) {
  EXPECT_THROW(ClassifySpecificity(W("room the"), W("the room")), ContractViolation);
}

TEST(KeywordCandidatesTest, ContainsSpanPrefixesChunksAndStar) {
  auto s = srlgen_test::OperatingRoom();
  const ArgSpan& loc = s->frames[0].args[0];
  ASSERT_EQ(loc.role.name(), "LOCATIVE");
  auto cands = ExtractKeywordCandidates(loc, *s, 3);
  auto has = [&](std::string content, Specificity spec) {
    return std::find(cands.begin(), cands.end(), KeywordCandidate{content, spec}) !=
           cands.end();
  };
  EXPECT_TRUE(has("In the operating room", Specificity::kComplete));
  EXPECT_TRUE(has("In", Specificity::kPartial));
  EXPECT_TRUE(has("In the", Specificity::kPartial));
  EXPECT_TRUE(has("the operating room", Specificity::kPartial));
  EXPECT_EQ(cands.back().content, "*");
  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j) EXPECT_FALSE(cands[i] == cands[j]);
}

TEST(KeywordCandidatesTest, LowercaseOptionAndDeterminism) {
  auto s = srlgen_test::OperatingRoom();
  const ArgSpan& loc = s->frames[0].args[0];
  auto a = ExtractKeywordCandidates(loc, *s, 9, {true, 3});
  EXPECT_EQ(a.front().content, "in the operating room");
  EXPECT_EQ(a, ExtractKeywordCandidates(loc, *s, 9, {true, 3}));
}

TEST(KeywordCandidatesTest, EveryCandidateClassifiesToItsSpec) {
  auto s = srlgen_test::LoadSentence("recipes.jsonl", "ud-boutiques");
  for (const auto& arg : s->frames[0].args) {
    const auto span = s->words(arg.span());
    for (const auto& c : ExtractKeywordCandidates(arg, *s, 1)) {
      if (c.content == "*") continue;
      EXPECT_EQ(ClassifySpecificity(W(c.content), span), c.spec) << c.content;
    }
  }
}

TEST(VerbFeaturesTest, ActivePast) {
  auto s = Tagged("the/DT doctor/NN comforted/VBD the/DT athlete/NN");
  EXPECT_EQ(DetectVerbFeatures(s, 2, {}), (VerbFeatures{Voice::kActive, Tense::kPast, "comfort"}));
}

TEST(VerbFeaturesTest, PassivePast) {
  auto s = Tagged("the/DT athlete/NN was/VBD comforted/VBN by/IN the/DT doctor/NN");
  auto aux = DetectAuxiliaries(s, 3, {});
  EXPECT_EQ(aux, std::vector<int>{2});
  auto f = DetectVerbFeatures(s, 3, aux);
  EXPECT_EQ(f.voice, Voice::kPassive);
  EXPECT_EQ(f.tense, Tense::kPast);
  EXPECT_EQ(f.lemma, "comfort");
}

TEST(VerbFeaturesTest, FutureWithWillAndGoingTo) {
  auto s = Tagged("she/PRP will/MD comfort/VB him/PRP");
  auto aux = DetectAuxiliaries(s, 2, {});
  EXPECT_EQ(DetectVerbFeatures(s, 2, aux).tense, Tense::kFuture);
  auto g = Tagged("she/PRP is/VBZ going/VBG to/TO comfort/VB him/PRP");
  EXPECT_EQ(DetectVerbFeatures(g, 4, DetectAuxiliaries(g, 4, {})).tense, Tense::kFuture);
}

TEST(VerbFeaturesTest, DoSupportPast) {
  auto s = Tagged("How/WRB did/VBD the/DT Huguenots/NNPS defend/VB themselves/PRP ?/.");
  std::vector<ArgSpan> args = {{RoleLabel::Kind::kManner, 0, 1, "ARGM-MNR"},
                               {RoleLabel::Kind::kAgent, 2, 4, "ARG0"},
                               {RoleLabel::Kind::kPatient, 5, 6, "ARG1"}};
  auto aux = DetectAuxiliaries(s, 4, args);
  EXPECT_EQ(aux, std::vector<int>{1});
  auto f = DetectVerbFeatures(s, 4, aux, args);
  EXPECT_EQ(f, (VerbFeatures{Voice::kActive, Tense::kPast, "defend"}));
}

TEST(VerbFeaturesTest, PresentThirdPerson) {
  auto s = Tagged("the/DT doctor/NN comforts/VBZ the/DT athlete/NN");
  EXPECT_EQ(DetectVerbFeatures(s, 2, {}).tense, Tense::kPresent);
}

TEST(VerbFeaturesTest, MissingPosThrows) {
  SrlSentence s;
  s.tokens = {{"he", 0, {}, {}}, {"ran", 1, {}, {}}};
  EXPECT_THROW(DetectVerbFeatures(s, 1, {}), FeatureDetectionError);
}

TEST(SentenceTest, WordsAndText) {
  auto s = srlgen_test::OperatingRoom();
  EXPECT_EQ(s->text(), "In the operating room , the doctor comforted the athlete .");
  EXPECT_EQ(s->text({5, 7}), "the doctor");
  EXPECT_EQ(s->frames[0].verb_group().start, 7);
}

TEST(FindArgTest, OccurrenceRoundTrip) {
  PredicateFrame f;
  f.args = {{RoleLabel::Kind::kTemporal, 0, 1, ""},
            {RoleLabel::Kind::kAgent, 1, 2, ""},
            {RoleLabel::Kind::kTemporal, 4, 5, ""}};
  for (std::size_t i = 0; i < f.args.size(); ++i) EXPECT_EQ(FindArg(f, OccurrenceOf(f, i)), i);
  EXPECT_EQ(OccurrenceOf(f, 2).occurrence, 1);
  EXPECT_FALSE(FindArg(f, {RoleLabel::Kind::kPatient, 0}));
}

}  // namespace
}  // namespace srlgen
