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

#include <algorithm>
#include <cctype>
#include <set>

#include "srlgen/error.h"
#include "srlgen/rng.h"
#include "srlgen/text.h"

namespace srlgen {

namespace {

using nlohmann::json;
using Kind = RoleLabel::Kind;

// ---- program builders ----

PerturbOp ContentOp(std::string text) {
  PerturbOp op;
  op.kind = OpKind::kChangeContent;
  op.text = std::move(text);
  return op;
}

PerturbOp SpecOp(Specificity spec) {
  PerturbOp op;
  op.kind = OpKind::kChangeSpec;
  op.spec = spec;
  return op;
}

PerturbOp SimpleOp(OpKind kind) {
  PerturbOp op;
  op.kind = kind;
  return op;
}

PerturbOp TenseOp(Tense t) {
  PerturbOp op;
  op.kind = OpKind::kChangeVTense;
  op.tense = t;
  return op;
}

PerturbOp VoiceOp(Voice v) {
  PerturbOp op;
  op.kind = OpKind::kChangeVVoice;
  op.voice = v;
  return op;
}

PerturbOp RangeOp(OpKind kind, int a, int b) {
  PerturbOp op;
  op.kind = kind;
  op.range = std::make_pair(a, b);
  return op;
}

Clause Scoped(RoleLabel role, std::vector<PerturbOp> ops) { return {role, std::move(ops)}; }
Clause Global(std::vector<PerturbOp> ops) { return {std::nullopt, std::move(ops)}; }

// ---- sentence helpers ----

const ArgSpan* FirstArg(const PredicateFrame& f, Kind kind) {
  for (const auto& a : f.args)
    if (a.role.kind() == kind) return &a;
  return nullptr;
}

bool StartsWithBy(const std::vector<std::string>& words) {
  return !words.empty() && EqualsFolded(words[0], "by");
}

bool IsProperNoun(const Token& t) {
  return t.pos && (*t.pos == "NNP" || *t.pos == "NNPS");
}

std::string Capitalize(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// Text of `span` for use away from the sentence start: a capital that only
// marks the sentence start is dropped.
std::string Decapitalized(const SrlSentence& s, Span span) {
  std::string text = s.text(span);
  if (span.start == 0 && span.size() > 0 && !IsProperNoun(s.tokens[0]) && s.tokens[0].text != "I")
    return LowerFirst(text);
  return text;
}

// `text` adjusted to sit where `slot` was: capitalized when that span began
// the sentence.
std::string CasedFor(const SrlSentence&, Span slot, std::string text) {
  return slot.start == 0 ? Capitalize(std::move(text)) : text;
}

// A sentence-initial argument that leaves the front loses its capital.
void AppendRecase(const SrlSentence& s, const ArgSpan& arg, std::vector<Clause>& clauses) {
  const std::string lowered = Decapitalized(s, arg.span());
  if (lowered != s.text(arg.span())) clauses.push_back(Scoped(arg.role, {ContentOp(lowered)}));
}

std::string JoinWords(const SrlSentence& s, int begin, int end) { return s.text({begin, end}); }

std::vector<RoleOccurrence> EveryArg(const PredicateFrame& f) {
  std::vector<RoleOccurrence> out;
  for (std::size_t i = 0; i < f.args.size(); ++i) out.push_back(OccurrenceOf(f, i));
  return out;
}

PromptSpec CompileMasked(const std::shared_ptr<const SrlSentence>& s, int frame_idx,
                         std::vector<RoleOccurrence> mask, int extras, std::uint64_t seed) {
  CompileRequest req;
  req.frame_idx = frame_idx;
  req.mask = std::move(mask);
  req.n_extra_blanks = extras;
  req.seed = DeriveSeed(seed, {TagHash("recipe-compile"), static_cast<std::uint64_t>(frame_idx)});
  return Compile(s, req);
}

RecipeCandidate Finish(std::string recipe, int frame_idx, PromptSpec prompt, OpProgram program,
                       std::uint64_t seed, json metadata = json::object()) {
  RecipeCandidate c;
  c.recipe = std::move(recipe);
  c.frame_idx = frame_idx;
  c.perturbed = Apply(prompt, program,
                      {DeriveSeed(seed, {TagHash("recipe-apply"),
                                         static_cast<std::uint64_t>(frame_idx)})});
  c.prompt = std::move(prompt);
  c.program = std::move(program);
  c.metadata = std::move(metadata);
  c.metadata["recipe"] = c.recipe;
  c.metadata["frame_idx"] = frame_idx;
  return c;
}

std::string FrameReason(int f, const std::string& why) {
  return "frame " + std::to_string(f) + ": " + why;
}

// ---- NLI strategies ----

// Null when the frame does not qualify; `why` says why.
std::optional<OpProgram> NliProgram(const SrlSentence& s, int fi, NliStrategy strategy,
                                    std::uint64_t seed, std::string& why) {
  const PredicateFrame& f = s.frames[fi];
  const ArgSpan* agent = FirstArg(f, Kind::kAgent);
  const ArgSpan* patient = FirstArg(f, Kind::kPatient);
  OpProgram prog;
  switch (strategy) {
    case NliStrategy::kUntangleRelativeClause:
      if (f.referents.empty()) {
        why = "no relative-clause referent";
        return std::nullopt;
      }
      prog.clauses.push_back(Global({SimpleOp(OpKind::kContextDeleteText)}));
      return prog;
    case NliStrategy::kShortenCore:
      for (const ArgSpan* arg : {agent, patient}) {
        if (!arg) continue;
        // The head chunk has to lead the span; "by the judges" keeps its
        // preposition.
        for (const Span& c : s.chunks) {
          if (c.start != arg->start || c.end > arg->end) continue;
          if (c.size() < arg->span().size())
            prog.clauses.push_back(Scoped(arg->role, {ContentOp(s.text(c))}));
          break;
        }
      }
      if (prog.clauses.empty()) why = "no core argument longer than its head chunk";
      break;
    case NliStrategy::kChangeVoice:
      if (!agent || !patient) {
        why = "needs both AGENT and PATIENT";
        return std::nullopt;
      }
      if (f.voice == Voice::kActive) {
        prog.clauses.push_back(Global({VoiceOp(Voice::kPassive)}));
        prog.clauses.push_back(
            Scoped(agent->role, {ContentOp("by " + Decapitalized(s, agent->span()))}));
      } else {
        const auto words = s.words(agent->span());
        if (!StartsWithBy(words) || words.size() < 2) {
          why = "passive agent lacks a by-phrase";
          return std::nullopt;
        }
        prog.clauses.push_back(Global({VoiceOp(Voice::kActive)}));
        prog.clauses.push_back(Scoped(
            agent->role, {ContentOp(CasedFor(s, patient->span(),
                                             JoinWords(s, agent->start + 1, agent->end)))}));
        AppendRecase(s, *patient, prog.clauses);
      }
      return prog;
    case NliStrategy::kReplaceCoreWithSubsequences: {
      Rng rng(DeriveSeed(seed, {TagHash("replace-core"), static_cast<std::uint64_t>(fi)}));
      for (const ArgSpan* arg : {agent, patient}) {
        if (!arg) continue;
        const std::string current = s.text(arg->span());
        std::vector<Span> embedded, heads;
        for (const auto& other : f.args) {
          if (&other == arg) continue;
          bool first = true;
          for (const Span& c : s.chunks) {
            if (c.start < other.start || c.end > other.end) continue;
            if (!EqualsFolded(s.text(c), current)) (first ? heads : embedded).push_back(c);
            first = false;
          }
        }
        const std::vector<Span>& pool = embedded.empty() ? heads : embedded;
        if (pool.empty()) continue;
        const Span pick = rng.Pick(pool);
        prog.clauses.push_back(
            Scoped(arg->role, {ContentOp(CasedFor(s, arg->span(), Decapitalized(s, pick)))}));
      }
      if (prog.clauses.empty()) why = "no noun chunk in the other arguments";
      break;
    }
    case NliStrategy::kSwapCore: {
      if (!agent || !patient) {
        why = "needs both AGENT and PATIENT";
        return std::nullopt;
      }
      prog.clauses.push_back(Global({SimpleOp(OpKind::kSwapCore)}));
      const auto agent_words = s.words(agent->span());
      if (f.voice == Voice::kPassive && StartsWithBy(agent_words) && agent_words.size() > 1) {
        // Keep the by-phrase on the agent side.
        prog.clauses.push_back(
            Scoped(agent->role, {ContentOp("by " + Decapitalized(s, patient->span()))}));
        prog.clauses.push_back(
            Scoped(patient->role, {ContentOp(CasedFor(
                                      s, patient->span(),
                                      JoinWords(s, agent->start + 1, agent->end)))}));
      }
      return prog;
    }
  }
  if (prog.clauses.empty()) return std::nullopt;
  return prog;
}

// ---- PP attachment ----

RoleLabel GuessAdjunct(std::string_view prep) {
  const std::string p = CaseFold(prep);
  static const std::set<std::string> kLoc = {"at", "in", "on", "near", "under", "inside",
                                             "behind", "over", "above", "below", "beside"};
  static const std::set<std::string> kTmp = {"during", "before", "after", "until", "since"};
  static const std::set<std::string> kDir = {"to", "toward", "towards", "into", "onto"};
  if (kLoc.count(p)) return Kind::kLocative;
  if (kTmp.count(p)) return Kind::kTemporal;
  if (kDir.count(p)) return Kind::kDirection;
  if (p == "with" || p == "by") return Kind::kManner;
  if (p == "for") return Kind::kPurpose;
  return Kind::kAdverbial;
}

bool IsAdjunctRole(const RoleLabel& r) {
  return !r.is_core() && r.kind() != Kind::kModal && r.kind() != Kind::kNegation;
}

// ---- frame selection ----

int SelectFrame(const SrlSentence& s, const RecipeParams& params,
                const std::function<bool(const PredicateFrame&)>& ok, bool required) {
  if (auto it = params.find("frame"); it != params.end()) {
    int f = -1;
    try {
      f = std::stoi(it->second);
    } catch (const std::exception&) {
      throw RecipeParameterError("frame must be an integer, got \"" + it->second + "\"");
    }
    if (f < 0 || f >= static_cast<int>(s.frames.size()))
      throw RecipeInapplicable("frame " + it->second + " does not exist");
    return f;
  }
  if (auto it = params.find("verb"); it != params.end()) {
    for (std::size_t f = 0; f < s.frames.size(); ++f)
      if (EqualsFolded(s.frames[f].lemma, it->second)) return static_cast<int>(f);
    throw RecipeInapplicable("no frame with lemma \"" + it->second + "\"");
  }
  if (required) throw RecipeParameterError("missing parameter: frame or verb");
  for (std::size_t f = 0; f < s.frames.size(); ++f)
    if (ok(s.frames[f])) return static_cast<int>(f);
  throw RecipeInapplicable("no frame meets the recipe's requirements");
}

const std::string& Need(const RecipeParams& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end() || Trim(it->second).empty())
    throw RecipeParameterError("missing parameter: " + key);
  return it->second;
}

RoleLabel RoleParam(const std::string& name) {
  auto r = RoleLabel::FromName(name);
  if (!r) throw RecipeParameterError("unknown role \"" + name + "\"");
  return *r;
}

bool IsWhWord(std::string_view w) {
  static const std::set<std::string> kWh = {"how", "when", "where", "why", "what",
                                            "which", "who", "whom", "whose"};
  return kWh.count(CaseFold(w)) > 0;
}

bool IsTenseModal(const SrlSentence& s, const ArgSpan& a) {
  static const std::set<std::string> kModals = {"will", "would", "shall", "'ll", "wo"};
  const auto words = s.words(a.span());
  return words.size() == 1 && kModals.count(CaseFold(words[0])) > 0;
}

// ---- style transfer ----

enum class Transfer {
  kToFuture,
  kToPast,
  kToPresent,
  kAdjAdvRemoval,
  kPpFrontToBack,
  kPpRemoval,
  kActiveToPassive,
  kPassiveToActive,
};

std::optional<Transfer> ParseTransfer(std::string_view name) {
  static const std::map<std::string, Transfer, std::less<>> kNames = {
      {"to_future", Transfer::kToFuture},
      {"to_past", Transfer::kToPast},
      {"to_present", Transfer::kToPresent},
      {"adj_adv_removal", Transfer::kAdjAdvRemoval},
      {"pp_front_to_back", Transfer::kPpFrontToBack},
      {"pp_removal", Transfer::kPpRemoval},
      {"active_to_passive", Transfer::kActiveToPassive},
      {"passive_to_active", Transfer::kPassiveToActive},
  };
  auto it = kNames.find(CaseFold(Trim(name)));
  if (it == kNames.end()) return std::nullopt;
  return it->second;
}

bool IsTense(Transfer t) {
  return t == Transfer::kToFuture || t == Transfer::kToPast || t == Transfer::kToPresent;
}

bool HasPrefix(const std::optional<std::string>& pos, std::string_view prefix) {
  return pos && pos->rfind(prefix, 0) == 0;
}

const std::set<std::string>& Prepositions() {
  static const std::set<std::string> kPreps = {
      "in", "on", "at", "by", "with", "for", "from", "to", "of", "under", "over", "after",
      "before", "during", "behind", "near", "into", "through", "across", "inside", "since"};
  return kPreps;
}

bool IsPrepToken(const Token& t) {
  if (t.pos) return *t.pos == "IN";
  return Prepositions().count(CaseFold(t.text)) > 0;
}

void RequirePos(const SrlSentence& s, const PredicateFrame& f) {
  for (const auto& a : f.args)
    for (int i = a.start; i < a.end; ++i)
      if (!s.tokens[i].pos)
        throw FeatureDetectionError("removal transfer needs POS tags; token " +
                                    std::to_string(i) + " has none");
}

struct TransferPlan {
  std::set<std::size_t> mask;  // arg indices
  std::vector<Clause> clauses;
  // CHANGE_IDX over the compiled context is added once that exists.
  bool front_to_back = false;
};

// Adds the frame-specific part of one transfer to `plan`; false (with
// `why`) when it does not apply to the frame.
bool PlanTransfer(const SrlSentence& s, const PredicateFrame& f, Transfer t, TransferPlan& plan,
                  std::string& why) {
  const ArgSpan* agent = FirstArg(f, Kind::kAgent);
  const ArgSpan* patient = FirstArg(f, Kind::kPatient);
  auto index_of = [&](const ArgSpan* a) { return static_cast<std::size_t>(a - f.args.data()); };
  switch (t) {
    case Transfer::kToFuture:
    case Transfer::kToPast:
    case Transfer::kToPresent: {
      const Tense tense = t == Transfer::kToFuture ? Tense::kFuture
                          : t == Transfer::kToPast ? Tense::kPast
                                                   : Tense::kPresent;
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        const Kind k = f.args[i].role.kind();
        if (k == Kind::kModal || k == Kind::kNegation) plan.mask.insert(i);
      }
      plan.clauses.push_back(Global({TenseOp(tense)}));
      for (const auto& a : f.args)
        if (a.role.kind() == Kind::kModal && IsTenseModal(s, a)) {
          plan.clauses.push_back(Scoped(a.role, {SimpleOp(OpKind::kDelete)}));
          break;
        }
      return true;
    }
    case Transfer::kActiveToPassive:
      if (f.voice != Voice::kActive || !agent || !patient) {
        why = "needs an active frame with AGENT and PATIENT";
        return false;
      }
      plan.mask.insert(index_of(agent));
      plan.mask.insert(index_of(patient));
      plan.clauses.push_back(Global({VoiceOp(Voice::kPassive)}));
      plan.clauses.push_back(
          Scoped(agent->role, {ContentOp("by " + Decapitalized(s, agent->span()))}));
      return true;
    case Transfer::kPassiveToActive: {
      if (f.voice != Voice::kPassive || !agent || !patient) {
        why = "needs a passive frame with AGENT and PATIENT";
        return false;
      }
      const auto words = s.words(agent->span());
      if (!StartsWithBy(words) || words.size() < 2) {
        why = "passive agent lacks a by-phrase";
        return false;
      }
      plan.mask.insert(index_of(agent));
      plan.mask.insert(index_of(patient));
      plan.clauses.push_back(Global({VoiceOp(Voice::kActive)}));
      plan.clauses.push_back(Scoped(
          agent->role, {ContentOp(CasedFor(s, patient->span(),
                                           JoinWords(s, agent->start + 1, agent->end)))}));
      AppendRecase(s, *patient, plan.clauses);
      return true;
    }
    case Transfer::kAdjAdvRemoval:
    case Transfer::kPpRemoval: {
      RequirePos(s, f);
      std::set<RoleLabel> seen;
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        const ArgSpan& a = f.args[i];
        const Kind k = a.role.kind();
        if (k == Kind::kModal || k == Kind::kNegation || !seen.insert(a.role).second) continue;
        std::vector<std::string> kept;
        bool hit = false;
        if (t == Transfer::kAdjAdvRemoval) {
          for (int j = a.start; j < a.end; ++j) {
            const auto& pos = s.tokens[j].pos;
            if (HasPrefix(pos, "JJ") || HasPrefix(pos, "RB")) hit = true;
            else kept.push_back(s.tokens[j].text);
          }
        } else {
          for (int j = a.start; j < a.end && !hit; ++j) {
            if (IsPrepToken(s.tokens[j])) hit = true;
            else kept.push_back(s.tokens[j].text);
          }
        }
        if (!hit) continue;
        plan.mask.insert(i);
        if (kept.empty() || std::all_of(kept.begin(), kept.end(), [](const std::string& w) {
              return IsPunctuation(w);
            })) {
          plan.clauses.push_back(Scoped(a.role, {SimpleOp(OpKind::kDelete)}));
        } else {
          std::string content = JoinTokens(kept);
          if (a.start == 0 && !s.tokens[a.start].text.empty() &&
              std::isupper(static_cast<unsigned char>(s.tokens[a.start].text[0])))
            content = Capitalize(content);
          plan.clauses.push_back(Scoped(a.role, {ContentOp(content)}));
        }
      }
      if (plan.clauses.empty()) {
        why = t == Transfer::kAdjAdvRemoval ? "no adjective or adverb in any argument"
                                            : "no prepositional phrase in any argument";
        return false;
      }
      return true;
    }
    case Transfer::kPpFrontToBack: {
      const ArgSpan* lead = nullptr;
      for (const auto& a : f.args)
        if (a.start == 0) lead = &a;
      if (!lead || !IsPrepToken(s.tokens[0]) || lead->role.is_core()) {
        why = "no fronted prepositional adjunct";
        return false;
      }
      plan.mask.insert(index_of(lead));
      plan.front_to_back = true;
      AppendRecase(s, *lead, plan.clauses);
      return true;
    }
  }
  return false;
}

}  // namespace

json RecipeCandidate::ToJson() const {
  return {{"recipe", recipe},
          {"frame_idx", frame_idx},
          {"prompt", Serialize(prompt)},
          {"program", RenderProgram(program)},
          {"perturbed", Serialize(perturbed)},
          {"metadata", metadata}};
}

RecipeParams ParseRecipeParams(std::string_view text) {
  RecipeParams out;
  std::string last;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view piece = text.substr(start, comma - start);
    const std::size_t eq = piece.find('=');
    if (eq == std::string_view::npos) {
      if (!Trim(piece).empty() || !last.empty()) {
        if (last.empty()) throw RecipeParameterError("expected key=value, got \"" +
                                                     std::string(piece) + "\"");
        out[last] += "," + std::string(piece);
      }
    } else {
      const std::string key(Trim(piece.substr(0, eq)));
      if (key.empty()) throw RecipeParameterError("empty parameter name");
      out[key] = std::string(Trim(piece.substr(eq + 1)));
      last = key;
    }
    start = comma + 1;
  }
  for (auto& [k, v] : out) v = std::string(Trim(v));
  return out;
}

std::string_view ToString(NliStrategy s) {
  switch (s) {
    case NliStrategy::kUntangleRelativeClause:
      return "untangle_relative_clause";
    case NliStrategy::kShortenCore:
      return "shorten_core";
    case NliStrategy::kChangeVoice:
      return "change_voice";
    case NliStrategy::kReplaceCoreWithSubsequences:
      return "replace_core_with_subsequences";
    case NliStrategy::kSwapCore:
      return "swap_core";
  }
  return "";
}

std::string_view ToString(NliLabel l) {
  return l == NliLabel::kEntailment ? "entailment" : "neutral";
}

std::optional<NliStrategy> ParseNliStrategy(std::string_view name) {
  for (NliStrategy s :
       {NliStrategy::kUntangleRelativeClause, NliStrategy::kShortenCore,
        NliStrategy::kChangeVoice, NliStrategy::kReplaceCoreWithSubsequences,
        NliStrategy::kSwapCore})
    if (ToString(s) == name) return s;
  return std::nullopt;
}

NliLabel LabelFor(NliStrategy s) {
  switch (s) {
    case NliStrategy::kUntangleRelativeClause:
    case NliStrategy::kShortenCore:
    case NliStrategy::kChangeVoice:
      return NliLabel::kEntailment;
    case NliStrategy::kReplaceCoreWithSubsequences:
    case NliStrategy::kSwapCore:
      return NliLabel::kNeutral;
  }
  return NliLabel::kNeutral;
}

RecipeResult NliPerturb(std::shared_ptr<const SrlSentence> sentence, NliStrategy strategy,
                        std::uint64_t seed) {
  RecipeResult r;
  const SrlSentence& s = *sentence;
  for (int fi = 0; fi < static_cast<int>(s.frames.size()); ++fi) {
    std::string why;
    auto prog = NliProgram(s, fi, strategy, seed, why);
    if (!prog) {
      r.skipped.push_back(FrameReason(fi, why));
      continue;
    }
    PromptSpec base = CompileMasked(sentence, fi, EveryArg(s.frames[fi]), 0, seed);
    RecipeCandidate c = Finish(std::string(ToString(strategy)), fi, std::move(base),
                               std::move(*prog), seed,
                               {{"strategy", ToString(strategy)},
                                {"label", ToString(LabelFor(strategy))}});
    if (c.perturbed == c.prompt) {
      r.skipped.push_back(FrameReason(fi, "perturbation leaves the prompt unchanged"));
      continue;
    }
    r.candidates.push_back(std::move(c));
  }
  if (s.frames.empty()) r.skipped.push_back("no predicate frames");
  return r;
}

LabeledPair MakeLabeledPair(const SrlSentence& premise, NliStrategy strategy,
                            std::string hypothesis) {
  return {premise.text(), std::move(hypothesis), LabelFor(strategy),
          std::string(ToString(strategy))};
}

RecipeCandidate PpAttachmentSwap(std::shared_ptr<const SrlSentence> sentence,
                                 PpDirection direction, std::string_view preposition,
                                 std::optional<RoleLabel> adjunct_role, std::uint64_t seed) {
  const SrlSentence& s = *sentence;
  if (Trim(preposition).empty()) throw RecipeParameterError("missing preposition");
  const std::string prep(Trim(preposition));
  for (int fi = 0; fi < static_cast<int>(s.frames.size()); ++fi) {
    const PredicateFrame& f = s.frames[fi];
    const ArgSpan* patient = FirstArg(f, Kind::kPatient);
    if (!patient) continue;
    const auto pi = static_cast<std::size_t>(patient - f.args.data());
    if (direction == PpDirection::kToNoun) {
      std::optional<std::size_t> adj;
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        const ArgSpan& a = f.args[i];
        if (IsAdjunctRole(a.role) && a.start >= patient->end &&
            EqualsFolded(s.tokens[a.start].text, prep))
          adj = i;
      }
      if (!adj) continue;
      const ArgSpan& a = f.args[*adj];
      PromptSpec base =
          CompileMasked(sentence, fi, {OccurrenceOf(f, pi), OccurrenceOf(f, *adj)}, 0, seed);
      OpProgram prog;
      prog.clauses.push_back(Scoped(
          patient->role,
          {ContentOp(s.text(patient->span()) + " " + prep), SpecOp(Specificity::kPartial)}));
      prog.clauses.push_back(Scoped(a.role, {SimpleOp(OpKind::kDelete)}));
      return Finish("pp_attachment_swap", fi, std::move(base), std::move(prog), seed,
                    {{"direction", "to_noun"},
                     {"preposition", prep},
                     {"banned_phrases", json::array({s.text(a.span())})}});
    }
    int cut = -1;
    for (int j = patient->start + 1; j < patient->end; ++j)
      if (EqualsFolded(s.tokens[j].text, prep)) {
        cut = j;
        break;
      }
    if (cut < 0) continue;
    const RoleLabel role = adjunct_role ? *adjunct_role : GuessAdjunct(prep);
    PromptSpec base = CompileMasked(sentence, fi, {OccurrenceOf(f, pi)}, 0, seed);
    OpProgram prog;
    prog.clauses.push_back(Scoped(patient->role, {ContentOp(JoinWords(s, patient->start, cut)),
                                                  SpecOp(Specificity::kComplete)}));
    prog.clauses.push_back(Scoped(role, {ContentOp(LowerFirst(s.tokens[cut].text)),
                                         SpecOp(Specificity::kPartial),
                                         SimpleOp(OpKind::kMove)}));
    return Finish("pp_attachment_swap", fi, std::move(base), std::move(prog), seed,
                  {{"direction", "to_verb"},
                   {"preposition", prep},
                   {"banned_phrases", json::array({JoinWords(s, cut, patient->end)})}});
  }
  throw RecipeInapplicable(direction == PpDirection::kToNoun
                               ? "no patient followed by a verb-attached \"" + prep +
                                     "\" adjunct"
                               : "no patient containing a \"" + prep + "\" phrase");
}

std::optional<ContrastRecipe> ParseContrastRecipe(std::string_view name) {
  if (name == "change_entity") return ContrastRecipe::kChangeEntity;
  if (name == "matres_change_tense") return ContrastRecipe::kMatresChangeTense;
  if (name == "matres_change_order") return ContrastRecipe::kMatresChangeOrder;
  if (name == "qa_swap_answer_to_agent") return ContrastRecipe::kQaSwapAnswerToAgent;
  return std::nullopt;
}

RecipeCandidate RunContrastRecipe(std::shared_ptr<const SrlSentence> sentence,
                                  ContrastRecipe recipe, const RecipeParams& params,
                                  std::uint64_t seed) {
  const SrlSentence& s = *sentence;
  switch (recipe) {
    case ContrastRecipe::kChangeEntity: {
      const std::string& text = Need(params, "text");
      const RoleLabel role =
          params.count("role") ? RoleParam(params.at("role")) : RoleLabel(Kind::kAgent);
      const int fi = SelectFrame(
          s, params, [&](const PredicateFrame& f) { return FirstArg(f, role.kind()) != nullptr ||
                                                           (role.is_other() &&
                                                            std::any_of(f.args.begin(), f.args.end(),
                                                                        [&](const ArgSpan& a) {
                                                                          return a.role == role;
                                                                        })); },
          false);
      const PredicateFrame& f = s.frames[fi];
      if (!FindArg(f, {role, 0}))
        throw RecipeInapplicable("frame " + std::to_string(fi) + " has no " + role.name());
      PromptSpec base = CompileMasked(sentence, fi, {{role, 0}}, 0, seed);
      OpProgram prog;
      prog.clauses.push_back(Scoped(role, {ContentOp(text)}));
      return Finish("change_entity", fi, std::move(base), std::move(prog), seed);
    }
    case ContrastRecipe::kMatresChangeTense: {
      const std::string& name = Need(params, "tense");
      auto tense = ParseTense(CaseFold(name));
      if (!tense) throw RecipeParameterError("unknown tense \"" + name + "\"");
      const int fi = SelectFrame(s, params, [](const PredicateFrame&) { return true; }, false);
      const PredicateFrame& f = s.frames[fi];
      PromptSpec base = CompileMasked(sentence, fi, {}, 0, seed);
      OpProgram prog;
      prog.clauses.push_back(Global({TenseOp(*tense)}));
      for (const auto& a : f.args)
        if (a.role.kind() == Kind::kModal && IsTenseModal(s, a)) {
          prog.clauses.push_back(Scoped(a.role, {SimpleOp(OpKind::kDelete)}));
          break;
        }
      return Finish("matres_change_tense", fi, std::move(base), std::move(prog), seed);
    }
    case ContrastRecipe::kMatresChangeOrder: {
      const int fi = SelectFrame(s, params, [](const PredicateFrame&) { return true; }, true);
      const PredicateFrame& f = s.frames[fi];
      if (!FirstArg(f, Kind::kPatient))
        throw RecipeInapplicable("frame " + std::to_string(fi) + " has no PATIENT");
      PromptSpec base = CompileMasked(sentence, fi, {{Kind::kPatient, 0}}, 0, seed);
      OpProgram prog;
      prog.clauses.push_back(Scoped(Kind::kPatient, {SimpleOp(OpKind::kMove)}));
      return Finish("matres_change_order", fi, std::move(base), std::move(prog), seed);
    }
    case ContrastRecipe::kQaSwapAnswerToAgent: {
      const std::string& answer = Need(params, "answer");
      const std::string wh = params.count("wh") ? std::string(Trim(params.at("wh"))) : "who";
      if (wh.empty()) throw RecipeParameterError("empty wh parameter");
      auto questioned = [&](const PredicateFrame& f) -> const ArgSpan* {
        for (const auto& a : f.args)
          if (!a.role.is_core() && IsWhWord(s.tokens[a.start].text)) return &a;
        return nullptr;
      };
      const int fi = SelectFrame(
          s, params,
          [&](const PredicateFrame& f) {
            return FirstArg(f, Kind::kAgent) != nullptr && questioned(f) != nullptr;
          },
          false);
      const PredicateFrame& f = s.frames[fi];
      const ArgSpan* q = questioned(f);
      if (!FirstArg(f, Kind::kAgent) || !q)
        throw RecipeInapplicable("frame " + std::to_string(fi) +
                                 " needs an AGENT and a questioned adjunct");
      PromptSpec base = CompileMasked(sentence, fi, EveryArg(f), 0, seed);
      OpProgram prog;
      prog.clauses.push_back(Scoped(Kind::kAgent, {ContentOp(wh)}));
      prog.clauses.push_back(
          Scoped(q->role, {ContentOp(answer), SpecOp(Specificity::kPartial)}));
      return Finish("qa_swap_answer_to_agent", fi, std::move(base), std::move(prog), seed,
                    {{"answer", answer}, {"wh", wh}});
    }
  }
  throw RecipeParameterError("unknown contrast recipe");
}

RecipeResult StyleTransferProgram(std::shared_ptr<const SrlSentence> sentence,
                                  std::string_view transfer, std::uint64_t seed) {
  std::vector<Transfer> parts;
  std::size_t start = 0;
  while (start <= transfer.size()) {
    std::size_t plus = transfer.find('+', start);
    if (plus == std::string_view::npos) plus = transfer.size();
    auto t = ParseTransfer(transfer.substr(start, plus - start));
    if (!t)
      throw RecipeParameterError("unknown transfer \"" +
                                 std::string(transfer.substr(start, plus - start)) + "\"");
    parts.push_back(*t);
    start = plus + 1;
  }
  if (parts.size() > 2) throw RecipeParameterError("at most two transfers compose");
  if (parts.size() == 2) {
    const int tenses = IsTense(parts[0]) + IsTense(parts[1]);
    const bool other_ok = !IsTense(parts[0]) || !IsTense(parts[1]);
    const Transfer other = IsTense(parts[0]) ? parts[1] : parts[0];
    if (tenses != 1 || !other_ok || other == Transfer::kAdjAdvRemoval)
      throw RecipeParameterError("only tense x voice and tense x PP compositions are supported");
  }
  const bool tense_only = parts.size() == 1 && IsTense(parts[0]);

  RecipeResult r;
  const SrlSentence& s = *sentence;
  if (s.frames.empty()) r.skipped.push_back("no predicate frames");
  for (int fi = 0; fi < static_cast<int>(s.frames.size()); ++fi) {
    const PredicateFrame& f = s.frames[fi];
    TransferPlan plan;
    std::string why;
    bool ok = true;
    for (Transfer t : parts)
      if (!PlanTransfer(s, f, t, plan, why)) {
        ok = false;
        break;
      }
    if (!ok) {
      r.skipped.push_back(FrameReason(fi, why));
      continue;
    }
    std::vector<RoleOccurrence> mask;
    for (std::size_t i : plan.mask) mask.push_back(OccurrenceOf(f, i));
    PromptSpec base = CompileMasked(sentence, fi, std::move(mask), tense_only ? 2 : 0, seed);
    OpProgram prog;
    if (plan.front_to_back) {
      const int n = static_cast<int>(base.context.size());
      const bool final_punct = n > 0 && !base.context.back().is_blank() &&
                               IsPunctuation(base.context.back().text);
      std::vector<PerturbOp> ops = {RangeOp(OpKind::kChangeIdx, 0, final_punct ? n - 2 : n - 1)};
      if (n > 1 && !base.context[1].is_blank() && base.context[1].text == ",")
        ops.push_back(RangeOp(OpKind::kContextDeleteText, 0, 1));
      // Positions index the compiled context, so this runs before any DELETE.
      prog.clauses.push_back(Global(std::move(ops)));
    }
    prog.clauses.insert(prog.clauses.end(), plan.clauses.begin(), plan.clauses.end());
    r.candidates.push_back(Finish("style_transfer", fi, std::move(base), std::move(prog), seed,
                                  {{"transfer", std::string(transfer)}}));
  }
  return r;
}

std::vector<std::string> RecipeNames() {
  return {"untangle_relative_clause", "shorten_core",        "change_voice",
          "replace_core_with_subsequences", "swap_core",     "pp_attachment_swap",
          "change_entity",           "matres_change_tense",  "matres_change_order",
          "qa_swap_answer_to_agent", "style_transfer"};
}

RecipeResult RunRecipe(std::string_view name, std::shared_ptr<const SrlSentence> sentence,
                       const RecipeParams& params, std::uint64_t seed) {
  if (auto nli = ParseNliStrategy(name)) return NliPerturb(sentence, *nli, seed);
  RecipeResult r;
  try {
    if (name == "pp_attachment_swap") {
      const std::string& dir = Need(params, "direction");
      PpDirection d;
      if (dir == "to_noun") d = PpDirection::kToNoun;
      else if (dir == "to_verb") d = PpDirection::kToVerb;
      else throw RecipeParameterError("direction must be to_noun or to_verb");
      std::optional<RoleLabel> role;
      if (params.count("role")) role = RoleParam(params.at("role"));
      r.candidates.push_back(
          PpAttachmentSwap(sentence, d, Need(params, "preposition"), role, seed));
      return r;
    }
    if (auto c = ParseContrastRecipe(name)) {
      r.candidates.push_back(RunContrastRecipe(sentence, *c, params, seed));
      return r;
    }
  } catch (const RecipeInapplicable& e) {
    r.skipped.push_back(e.what());
    return r;
  }
  if (name == "style_transfer") return StyleTransferProgram(sentence, Need(params, "transfer"), seed);
  throw RecipeParameterError("unknown recipe \"" + std::string(name) + "\"");
}

}  // namespace srlgen
