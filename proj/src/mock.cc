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

#include "srlgen/mock.h"

#include <algorithm>
#include <cctype>

#include "srlgen/error.h"
#include "srlgen/morphology.h"
#include "srlgen/rng.h"
#include "srlgen/text.h"

namespace srlgen {

namespace {

using Kind = RoleLabel::Kind;

std::vector<std::string> Realize(const ArgCode& code) {
  if (code.is_any()) return SplitTokens(PlaceholderFor(code.role));
  std::vector<std::string> words = SplitTokens(code.content);
  if (code.spec == Specificity::kPartial) {
    words.emplace_back(kPartialFiller);
  } else if (code.spec == Specificity::kSparse) {
    for (auto& w : SplitTokens(kSparseFiller)) words.push_back(std::move(w));
  }
  return words;
}

int NaturalRank(const ControlCode& code, Voice voice) {
  if (std::holds_alternative<VerbCode>(code)) return 1;
  const Kind k = std::get<ArgCode>(code).role.kind();
  const Kind first = voice == Voice::kActive ? Kind::kAgent : Kind::kPatient;
  const Kind last = voice == Voice::kActive ? Kind::kPatient : Kind::kAgent;
  if (k == first) return 0;
  if (k == last) return 2;
  return 3;
}

}  // namespace

std::string PlaceholderFor(const RoleLabel& role) {
  switch (role.kind()) {
    case Kind::kAgent:
      return "someone";
    case Kind::kPatient:
      return "something";
    case Kind::kTemporal:
      return "at some point";
    case Kind::kLocative:
      return "somewhere";
    case Kind::kManner:
      return "somehow";
    case Kind::kCause:
      return "for some reason";
    case Kind::kExtent:
      return "to some extent";
    case Kind::kPurpose:
      return "for some purpose";
    case Kind::kDiscourse:
      return "however";
    case Kind::kGoal:
      return "toward some goal";
    case Kind::kAdverbial:
      return "in some way";
    case Kind::kModal:
      return "can";
    case Kind::kNegation:
      return "not";
    case Kind::kDirection:
      return "somewhere else";
    case Kind::kPredicative:
      return "as something";
    case Kind::kComitative:
      return "with someone";
    case Kind::kReciprocal:
      return "each other";
    case Kind::kOther:
      return "something else";
  }
  return "something";
}

TaggedOutput MockGenerateTagged(const PromptSpec& p) {
  const VerbCode* verb = p.verb();
  if (!verb) throw ContractViolation("prompt has no verb code");
  const int k = p.num_blanks();
  std::vector<std::vector<std::size_t>> fill(k);
  std::vector<std::size_t> unassigned;
  for (std::size_t i = 0; i < p.header.size(); ++i) {
    std::optional<int> slot =
        std::visit([](const auto& c) { return c.slot; }, p.header[i]);
    if (slot && *slot >= 0 && *slot < k) fill[*slot].push_back(i);
    else unassigned.push_back(i);
  }
  std::stable_sort(unassigned.begin(), unassigned.end(), [&](std::size_t a, std::size_t b) {
    return NaturalRank(p.header[a], verb->voice) < NaturalRank(p.header[b], verb->voice);
  });
  std::vector<int> free;
  for (int s = 0; s < k; ++s)
    if (fill[s].empty()) free.push_back(s);
  std::vector<std::size_t> trailing;
  for (std::size_t j = 0; j < unassigned.size(); ++j) {
    if (j < free.size()) fill[free[j]].push_back(unassigned[j]);
    else if (!free.empty()) fill[free.back()].push_back(unassigned[j]);
    else if (k > 0) fill[k - 1].push_back(unassigned[j]);
    else trailing.push_back(unassigned[j]);
  }

  // Exchange AGENT/PATIENT placements when their order contradicts the voice.
  auto locate = [&](Kind kind) -> std::optional<std::pair<int, std::size_t>> {
    for (int s = 0; s < k; ++s)
      for (std::size_t j = 0; j < fill[s].size(); ++j) {
        const auto* a = std::get_if<ArgCode>(&p.header[fill[s][j]]);
        if (a && a->role.kind() == kind) return std::make_pair(s, j);
      }
    return std::nullopt;
  };
  auto ag = locate(Kind::kAgent);
  auto pa = locate(Kind::kPatient);
  if (ag && pa) {
    const bool agent_first = *ag < *pa;
    if (agent_first != (verb->voice == Voice::kActive))
      std::swap(fill[ag->first][ag->second], fill[pa->first][pa->second]);
  }

  std::vector<std::vector<std::string>> words(p.header.size());
  std::optional<std::size_t> subject;
  const Kind subject_kind = verb->voice == Voice::kActive ? Kind::kAgent : Kind::kPatient;
  for (std::size_t i = 0; i < p.header.size(); ++i) {
    if (const auto* a = std::get_if<ArgCode>(&p.header[i])) {
      words[i] = Realize(*a);
      if (!subject && a->role.kind() == subject_kind) subject = i;
    }
  }
  bool plural = subject && IsPluralPhrase(words[*subject]);
  std::optional<int> verb_slot;
  for (int s = 0; s < k && !verb_slot; ++s)
    for (std::size_t c : fill[s])
      if (std::holds_alternative<VerbCode>(p.header[c])) verb_slot = s;
  if (!subject && verb_slot) {
    // Unmasked subject: the literal run right before the verb blank.
    std::vector<std::string> run;
    for (const auto& item : p.context) {
      if (item.is_blank() && item.slot == *verb_slot) break;
      if (item.is_blank() || IsPunctuation(item.text)) run.clear();
      else run.push_back(item.text);
    }
    if (run.size() > 4) run.erase(run.begin(), run.end() - 4);
    plural = IsPluralPhrase(run);
  }
  for (std::size_t i = 0; i < p.header.size(); ++i) {
    if (std::holds_alternative<VerbCode>(p.header[i]))
      words[i] = ConjugateVerb(verb->lemma, verb->voice, verb->tense, plural);
  }

  TaggedOutput out;
  std::vector<std::string> literal;
  auto flush = [&] {
    if (!literal.empty()) out.segments.push_back({std::nullopt, JoinTokens(literal)});
    literal.clear();
  };
  auto emit = [&](std::size_t code) {
    flush();
    std::string label = std::holds_alternative<VerbCode>(p.header[code])
                            ? std::string("VERB")
                            : std::get<ArgCode>(p.header[code]).role.name();
    out.segments.push_back({label, JoinTokens(words[code])});
  };
  for (const auto& item : p.context) {
    if (!item.is_blank()) {
      literal.push_back(item.text);
      continue;
    }
    for (std::size_t code : fill[item.slot]) emit(code);
  }
  for (std::size_t code : trailing) emit(code);
  flush();
  // The sentence starts with a capital unless it opens with the verb.
  for (auto& seg : out.segments) {
    if (seg.text.empty()) continue;
    if (seg.label != "VERB" && std::islower(static_cast<unsigned char>(seg.text[0])))
      seg.text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(seg.text[0])));
    break;
  }
  return out;
}

std::string MockGenerate(const PromptSpec& prompt) {
  return MockGenerateTagged(prompt).render();
}

SrlSentence MockPredictSrl(std::string_view tagged_text) {
  TaggedOutput tagged = ParseTaggedOutput(tagged_text);
  SrlSentence s;
  PredicateFrame frame;
  bool have_verb = false;
  for (const auto& seg : tagged.segments) {
    std::vector<std::string> ws = SplitTokens(seg.text);
    if (ws.empty()) continue;
    const int start = s.size();
    if (seg.label && *seg.label == "VERB" && !have_verb) {
      have_verb = true;
      std::vector<Token> toks = TagVerbGroup(ws);
      for (auto& t : toks) {
        t.index = s.size();
        s.tokens.push_back(std::move(t));
      }
      frame.verb_index = s.size() - 1;
      for (int i = start; i < frame.verb_index; ++i) frame.aux_indices.push_back(i);
      continue;
    }
    for (auto& w : ws) {
      Token t;
      t.text = std::move(w);
      t.index = s.size();
      s.tokens.push_back(std::move(t));
    }
    if (seg.label && *seg.label != "VERB") {
      auto role = RoleLabel::FromName(*seg.label);
      frame.args.push_back({role ? *role : RoleLabel::Other(*seg.label), start, s.size(),
                            *seg.label});
    }
  }
  if (!have_verb) throw SchemaError("tagged text has no VERB segment");
  VerbFeatures f = DetectVerbFeatures(s, frame.verb_index, frame.aux_indices, frame.args);
  frame.voice = f.voice;
  frame.tense = f.tense;
  frame.lemma = f.lemma;
  s.frames.push_back(std::move(frame));
  return s;
}

double MockLoss(std::string_view text) {
  const std::vector<std::string> words = SplitTokens(text);
  double rare = 0.0;
  for (const auto& w : words) rare += static_cast<double>(TagHash(CaseFold(w)) % 100) / 100.0;
  const double n = static_cast<double>(words.size());
  return 1.5 + 0.02 * n + (n > 0 ? rare / n : 0.0);
}

}  // namespace srlgen
