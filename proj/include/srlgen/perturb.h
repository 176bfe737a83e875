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

#ifndef SRLGEN_PERTURB_H_
#define SRLGEN_PERTURB_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srlgen/prompt.h"
#include "srlgen/srl.h"

namespace srlgen {

enum class OpKind {
  kChangeVTense,
  kChangeVVoice,
  kChangeVLemma,
  kSwapCore,
  kChangeIdx,
  kMove,
  kChangeContent,
  kChangeSpec,
  kDelete,
  kContextDeleteText,
};

std::string_view OpName(OpKind kind);
// CHANGE_CONTENT, CHANGE_SPEC, DELETE and MOVE need a role scope; the rest
// must not have one.
bool IsRoleScoped(OpKind kind);

struct PerturbOp {
  OpKind kind = OpKind::kSwapCore;
  std::optional<Tense> tense;       // CHANGE_VTENSE
  std::optional<Voice> voice;       // CHANGE_VVOICE
  std::optional<Specificity> spec;  // CHANGE_SPEC
  std::string text;                 // CHANGE_VLEMMA lemma, CHANGE_CONTENT content
  // CHANGE_IDX (from, to); CONTEXT_DELETE_TEXT [first, second) when present.
  std::optional<std::pair<int, int>> range;
  std::optional<int> position;  // MOVE target

  friend bool operator==(const PerturbOp&, const PerturbOp&) = default;
};

struct Clause {
  std::optional<RoleLabel> role;  // none: global / verb scope
  std::vector<PerturbOp> ops;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct OpProgram {
  std::vector<Clause> clauses;

  friend bool operator==(const OpProgram&, const OpProgram&) = default;
};

// program := clause ((";" | "|") clause)*
// clause  := [SCOPE ":"] op ("," op)*
// op      := NAME ["(" arg ")"]
// Aliases: CONTENT, SPEC, CHANGE_VFORM, CHANGE_VOICE, CORE(SWAP_CORE),
// CONTEXT(DELETE_TEXT). Scope "VERB" is the global scope.
OpProgram ParseProgram(std::string_view text);

// Canonical alias-free spelling.
std::string RenderProgram(const OpProgram& program);

struct ApplyOptions {
  std::uint64_t seed = 0;
};

// Applies clauses left to right, ops left to right within a clause.
// Context positions (CHANGE_IDX, MOVE, CONTEXT_DELETE_TEXT) index context
// items, blanks and literals alike.
PromptSpec Apply(const PromptSpec& prompt, const OpProgram& program,
                 const ApplyOptions& options = {});

// Roles touched by any op, and whether any op changes the verb.
struct ProgramFootprint {
  std::vector<RoleLabel> roles;
  bool verb = false;
};
ProgramFootprint Footprint(const OpProgram& program);

}  // namespace srlgen

#endif  // SRLGEN_PERTURB_H_
