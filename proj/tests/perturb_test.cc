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

#include "json.hpp"
#include "srlgen/error.h"
#include "srlgen/perturb.h"
#include "srlgen/prompt.h"
#include "srlgen/rng.h"
#include "srlgen/text.h"
#include "test_util.h"

namespace srlgen {
namespace {

// Golden operations base: every role masked with complete keywords.
PromptSpec CanonicalPrompt() {
  auto s = srlgen_test::OperationRoom();
  CompileRequest r;
  for (std::size_t a = 0; a < s->frames[0].args.size(); ++a) {
    RoleOccurrence occ = OccurrenceOf(s->frames[0], a);
    r.mask.push_back(occ);
    r.keywords[occ] = {CaseFold(s->text(s->frames[0].args[a].span())), Specificity::kComplete};
  }
  return Compile(s, r);
}

TEST(OperationGoldenTest, CanonicalPromptMatchesGolden) {
  auto golden = nlohmann::json::parse(srlgen_test::ReadFile(srlgen_test::GoldenPath("operations.json")));
  EXPECT_EQ(Serialize(CanonicalPrompt()), golden["canonical"].get<std::string>());
}

TEST(OperationGoldenTest, EveryRow) {
  auto golden = nlohmann::json::parse(srlgen_test::ReadFile(srlgen_test::GoldenPath("operations.json")));
  const PromptSpec base = CanonicalPrompt();
  for (const auto& row : golden["rows"]) {
    const std::string program = row["program"];
    PromptSpec in = row.contains("prompt") ? ParsePrompt(row["prompt"].get<std::string>()) : base;
    ApplyOptions opt;
    if (row.contains("seed")) opt.seed = row["seed"].get<std::uint64_t>();
    PromptSpec out = Apply(in, ParseProgram(program), opt);
    EXPECT_EQ(Serialize(out), row["expected"].get<std::string>()) << program;
  }
}

TEST(OperationGoldenTest, DeleteDropsSpanAndComma) {
  PromptSpec out = Apply(CanonicalPrompt(), ParseProgram("LOCATIVE:DELETE"));
  EXPECT_FALSE(out.FindCode(RoleLabel::Kind::kLocative));
  EXPECT_EQ(out.context.front(), ContextItem::Blank(0));
}

TEST(ProgramParseTest, Aliases) {
  EXPECT_EQ(ParseProgram("CORE(SWAP_CORE)"), ParseProgram("SWAP_CORE"));
  EXPECT_EQ(ParseProgram("AGENT:CONTENT(the adult)"),
            ParseProgram("AGENT:CHANGE_CONTENT(the adult)"));
  EXPECT_EQ(ParseProgram("LOCATIVE:SPEC(partial)"), ParseProgram("LOCATIVE:CHANGE_SPEC(partial)"));
  EXPECT_EQ(ParseProgram("CHANGE_VFORM(future)"), ParseProgram("CHANGE_VTENSE(future)"));
  EXPECT_EQ(ParseProgram("CHANGE_VOICE(passive)"), ParseProgram("CHANGE_VVOICE(passive)"));
  EXPECT_EQ(ParseProgram("CONTEXT(DELETE_TEXT)"), ParseProgram("CONTEXT_DELETE_TEXT"));
  EXPECT_EQ(ParseProgram("VERB:CHANGE_VTENSE(past)"), ParseProgram("CHANGE_VTENSE(past)"));
  EXPECT_EQ(ParseProgram("CHANGE_VTENSE(past) | AGENT:DELETE"),
            ParseProgram("CHANGE_VTENSE(past);AGENT:DELETE"));
}

TEST(ProgramParseTest, Structure) {
  OpProgram p = ParseProgram("CHANGE_VTENSE(present),CHANGE_VVOICE(passive); AGENT:CHANGE_CONTENT(a, b (c)),MOVE(3)");
  ASSERT_EQ(p.clauses.size(), 2u);
  EXPECT_FALSE(p.clauses[0].role);
  EXPECT_EQ(p.clauses[0].ops.size(), 2u);
  EXPECT_EQ(p.clauses[1].role, RoleLabel(RoleLabel::Kind::kAgent));
  EXPECT_EQ(p.clauses[1].ops[0].text, "a, b (c)");
  EXPECT_EQ(p.clauses[1].ops[1].position, 3);
  EXPECT_EQ(RenderProgram(p),
            "CHANGE_VTENSE(present),CHANGE_VVOICE(passive);AGENT:CHANGE_CONTENT(a, b (c)),MOVE(3)");
}

TEST(ProgramParseTest, Errors) {
  const char* bad[] = {
      "",
      "FLY",
      "CHANGE_VTENSE(yesterday)",
      "CHANGE_VVOICE",
      "AGENT:CHANGE_VTENSE(past)",
      "CHANGE_SPEC(partial)",
      "WHO:DELETE",
      "AGENT:CHANGE_SPEC(roughly)",
      "CHANGE_IDX(1)",
      "CHANGE_IDX(a:b)",
      "AGENT:CHANGE_CONTENT(unbalanced",
      "AGENT:DELETE;AGENT:DELETE",
      "AGENT:DELETE,",
      "CHANGE_VTENSE(past) AGENT:DELETE",
  };
  for (const char* text : bad) EXPECT_THROW(ParseProgram(text), ParseError) << text;
}

TEST(ProgramRoundTripProperty, ParseRenderIdentity) {
  srlgen::Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    OpProgram p = srlgen_test::RandomProgram(rng);
    const std::string text = RenderProgram(p);
    EXPECT_EQ(ParseProgram(text), p) << text;
    EXPECT_EQ(RenderProgram(ParseProgram(text)), text);
  }
}

TEST(ApplyTest, MissingRoleIsUnknownRole) {
  EXPECT_THROW(Apply(CanonicalPrompt(), ParseProgram("TEMPORAL:CHANGE_SPEC(partial)")),
               UnknownRoleError);
  EXPECT_THROW(Apply(CanonicalPrompt(), ParseProgram("TEMPORAL:MOVE")), UnknownRoleError);
  EXPECT_THROW(Apply(CanonicalPrompt(), ParseProgram("TEMPORAL:DELETE")), UnknownRoleError);
}

TEST(ApplyTest, IndexOutOfRange) {
  EXPECT_THROW(Apply(CanonicalPrompt(), ParseProgram("CHANGE_IDX(9:0)")), RangeError);
  EXPECT_THROW(Apply(CanonicalPrompt(), ParseProgram("CONTEXT_DELETE_TEXT(2:99)")), RangeError);
  EXPECT_THROW(Apply(CanonicalPrompt(), ParseProgram("AGENT:MOVE(40)")), RangeError);
}

TEST(ApplyTest, SwapCoreNeedsBothCores) {
  PromptSpec p = Apply(CanonicalPrompt(), ParseProgram("PATIENT:DELETE"));
  EXPECT_THROW(Apply(p, ParseProgram("SWAP_CORE")), UnknownRoleError);
}

TEST(ApplyTest, ChangeContentStarDropsSpec) {
  PromptSpec p = Apply(CanonicalPrompt(), ParseProgram("AGENT:CHANGE_CONTENT(*)"));
  const auto& a = std::get<ArgCode>(p.header[*p.FindCode(RoleLabel::Kind::kAgent)]);
  EXPECT_TRUE(a.is_any());
  EXPECT_FALSE(a.spec);
  EXPECT_THROW(Apply(p, ParseProgram("AGENT:CHANGE_SPEC(partial)")), ContractViolation);
}

TEST(ApplyTest, LaterSpecOverridesContentReclassification) {
  PromptSpec p =
      Apply(CanonicalPrompt(), ParseProgram("AGENT:CHANGE_CONTENT(adult),CHANGE_SPEC(sparse)"));
  EXPECT_EQ(SerializeCode(p.header[1]), "AGENT+sparse: adult");
}

TEST(ApplyTest, VerbLemma) {
  PromptSpec p = Apply(CanonicalPrompt(), ParseProgram("CHANGE_VLEMMA(console)"));
  EXPECT_EQ(p.verb()->lemma, "console");
}

TEST(ApplyTest, MoveToEnd) {
  PromptSpec p = Apply(CanonicalPrompt(), ParseProgram("LOCATIVE:MOVE"));
  EXPECT_EQ(Serialize(p).substr(Serialize(p).find(']') + 2),
            "<extra_id_0> <extra_id_1> <extra_id_2> <extra_id_3> .");
  const auto& loc = std::get<ArgCode>(p.header[*p.FindCode(RoleLabel::Kind::kLocative)]);
  EXPECT_EQ(loc.slot, 3);
}

TEST(ApplyTest, ContextDeleteTextKeepsBlanks) {
  PromptSpec p = ParsePrompt("[VERB+active+past: go] a <extra_id_0> b c .");
  PromptSpec q = Apply(p, ParseProgram("CONTEXT_DELETE_TEXT(0:4)"));
  EXPECT_EQ(Serialize(q), "[VERB+active+past: go] <extra_id_0> .");
}

TEST(ApplyTest, ContextDeleteTextWithoutRangeKeepsFrameLiterals) {
  auto s = srlgen_test::LoadSentence("recipes.jsonl", "athlete-yesterday");
  CompileRequest r;
  r.frame_idx = 1;
  r.mask = {{RoleLabel::Kind::kPatient, 0}};
  PromptSpec p = Compile(s, r);
  PromptSpec q = Apply(p, ParseProgram("CONTEXT_DELETE_TEXT"));
  ValidatePrompt(q);
  EXPECT_LE(q.context.size(), p.context.size());
}

TEST(ApplyTest, InsertedRoleGetsFreshBlank) {
  PromptSpec p = Apply(CanonicalPrompt(), ParseProgram("CAUSE:CHANGE_CONTENT(because it hurt)"),
                       {5});
  EXPECT_EQ(p.num_blanks(), 5);
  EXPECT_TRUE(IsCanonicalOrder(p.header));
  ValidatePrompt(p);
}

TEST(ApplyTest, Deterministic) {
  OpProgram prog = ParseProgram("CAUSE:CHANGE_CONTENT(because it hurt);TEMPORAL:CHANGE_CONTENT(then)");
  EXPECT_EQ(Serialize(Apply(CanonicalPrompt(), prog, {42})),
            Serialize(Apply(CanonicalPrompt(), prog, {42})));
}

TEST(ApplyProperty, ResultsAreValidOrTypedErrors) {
  srlgen::Rng rng(3);
  int applied = 0;
  for (int i = 0; i < 500; ++i) {
    OpProgram prog = srlgen_test::RandomProgram(rng);
    try {
      PromptSpec out = Apply(CanonicalPrompt(), prog, {rng.Next()});
      ValidatePrompt(out);
      EXPECT_EQ(ParsePrompt(Serialize(out)), out);
      ++applied;
    } catch (const UnknownRoleError&) {
    } catch (const RangeError&) {
    } catch (const ContractViolation&) {
    }
  }
  EXPECT_GT(applied, 50);
}

TEST(FootprintTest, RolesAndVerb) {
  ProgramFootprint fp = Footprint(ParseProgram("SWAP_CORE;LOCATIVE:DELETE"));
  EXPECT_FALSE(fp.verb);
  EXPECT_EQ(fp.roles.size(), 3u);
  EXPECT_TRUE(Footprint(ParseProgram("CHANGE_VTENSE(past)")).verb);
  EXPECT_TRUE(Footprint(ParseProgram("CHANGE_IDX(1:0)")).roles.empty());
}

}  // namespace
}  // namespace srlgen
