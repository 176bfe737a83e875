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

#include "srlgen/srl.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <utility>

#include "srlgen/error.h"
#include "srlgen/morphology.h"
#include "srlgen/rng.h"
#include "srlgen/text.h"

namespace srlgen {

namespace {

using Kind = RoleLabel::Kind;

struct KindName {
  Kind kind;
  std::string_view name;
};

constexpr std::array<KindName, 17> kKindNames = {{
    {Kind::kAgent, "AGENT"},
    {Kind::kPatient, "PATIENT"},
    {Kind::kTemporal, "TEMPORAL"},
    {Kind::kLocative, "LOCATIVE"},
    {Kind::kManner, "MANNER"},
    {Kind::kCause, "CAUSE"},
    {Kind::kExtent, "EXTENT"},
    {Kind::kPurpose, "PURPOSE"},
    {Kind::kDiscourse, "DISCOURSE"},
    {Kind::kGoal, "GOAL"},
    {Kind::kAdverbial, "ADVERBIAL"},
    {Kind::kModal, "MODAL"},
    {Kind::kNegation, "NEGATION"},
    {Kind::kDirection, "DIRECTION"},
    {Kind::kPredicative, "PREDICATIVE"},
    {Kind::kComitative, "COMITATIVE"},
    {Kind::kReciprocal, "RECIPROCAL"},
}};

// PropBank function codes (ARGM-XXX suffixes, also used as frame functions).
struct FunctionCode {
  std::string_view code;
  Kind kind;
};

constexpr std::array<FunctionCode, 16> kFunctionCodes = {{
    {"TMP", Kind::kTemporal},
    {"LOC", Kind::kLocative},
    {"MNR", Kind::kManner},
    {"CAU", Kind::kCause},
    {"EXT", Kind::kExtent},
    {"PRP", Kind::kPurpose},
    {"PNC", Kind::kPurpose},
    {"DIS", Kind::kDiscourse},
    {"GOL", Kind::kGoal},
    {"ADV", Kind::kAdverbial},
    {"MOD", Kind::kModal},
    {"NEG", Kind::kNegation},
    {"DIR", Kind::kDirection},
    {"PRD", Kind::kPredicative},
    {"COM", Kind::kComitative},
    {"REC", Kind::kReciprocal},
}};

std::string Upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::optional<Kind> KindFromName(std::string_view name) {
  for (const auto& kn : kKindNames)
    if (kn.name == name) return kn.kind;
  return std::nullopt;
}

std::optional<Kind> KindFromFunction(std::string_view code) {
  for (const auto& fc : kFunctionCodes)
    if (fc.code == code) return fc.kind;
  return std::nullopt;
}

bool IsOtherName(std::string_view name) {
  if (name.size() < 3 || name.substr(0, 3) != "ARG") return false;
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::isupper(c) || std::isdigit(c) || c == '-' || c == '_';
  });
}

const std::set<std::string>& BeForms() {
  static const std::set<std::string> kForms = {
      "be", "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m"};
  return kForms;
}
const std::set<std::string>& HaveForms() {
  static const std::set<std::string> kForms = {"have", "has", "had", "having",
                                               "'ve", "'d"};
  return kForms;
}
const std::set<std::string>& DoForms() {
  static const std::set<std::string> kForms = {"do", "does", "did"};
  return kForms;
}
const std::set<std::string>& ModalForms() {
  static const std::set<std::string> kForms = {
      "will", "would", "shall", "should", "can", "could", "may",
      "might", "must", "'ll", "wo", "ca", "ought"};
  return kForms;
}
const std::set<std::string>& FutureForms() {
  static const std::set<std::string> kForms = {"will", "shall", "'ll", "wo"};
  return kForms;
}

std::string Folded(const Token& t) { return CaseFold(t.text); }

bool IsBe(const Token& t) {
  if (t.lemma && CaseFold(*t.lemma) == "be") return true;
  return BeForms().count(Folded(t)) > 0;
}

bool IsAuxWord(const Token& t) {
  if (t.pos && *t.pos == "MD") return true;
  std::string w = Folded(t);
  if (ModalForms().count(w)) return true;
  if (IsBe(t)) return true;
  std::string lemma = t.lemma ? CaseFold(*t.lemma) : w;
  if (lemma == "have" || HaveForms().count(w)) return true;
  if (lemma == "do" || DoForms().count(w)) return true;
  return false;
}

bool IsPastAux(const Token& t) {
  if (t.pos && *t.pos == "VBD") return true;
  std::string w = Folded(t);
  return w == "was" || w == "were" || w == "did" || w == "had";
}

const ArgSpan* ArgAt(std::span<const ArgSpan> args, int i) {
  for (const auto& a : args)
    if (a.span().contains(i)) return &a;
  return nullptr;
}

bool IsSkippable(const SrlSentence& s, std::span<const ArgSpan> args, int i) {
  if (const ArgSpan* a = ArgAt(args, i)) {
    return a->role.kind() == Kind::kNegation || a->role.kind() == Kind::kModal;
  }
  const Token& t = s.tokens[i];
  if (t.pos && (*t.pos == "RB" || *t.pos == "RBR" || *t.pos == "RBS")) {
    return !IsAuxWord(t);
  }
  std::string w = Folded(t);
  return w == "not" || w == "n't" || w == "never";
}

}  // namespace

std::string_view ToString(Voice voice) {
  return voice == Voice::kActive ? "active" : "passive";
}

std::string_view ToString(Tense tense) {
  switch (tense) {
    case Tense::kPast:
      return "past";
    case Tense::kPresent:
      return "present";
    case Tense::kFuture:
      return "future";
  }
  return "present";
}

std::string_view ToString(Specificity spec) {
  switch (spec) {
    case Specificity::kComplete:
      return "complete";
    case Specificity::kPartial:
      return "partial";
    case Specificity::kSparse:
      return "sparse";
  }
  return "sparse";
}

std::optional<Voice> ParseVoice(std::string_view text) {
  if (text == "active") return Voice::kActive;
  if (text == "passive") return Voice::kPassive;
  return std::nullopt;
}

std::optional<Tense> ParseTense(std::string_view text) {
  if (text == "past") return Tense::kPast;
  if (text == "present") return Tense::kPresent;
  if (text == "future") return Tense::kFuture;
  return std::nullopt;
}

std::optional<Specificity> ParseSpecificity(std::string_view text) {
  if (text == "complete") return Specificity::kComplete;
  if (text == "partial") return Specificity::kPartial;
  if (text == "sparse") return Specificity::kSparse;
  return std::nullopt;
}

RoleLabel RoleLabel::Other(std::string_view label) {
  std::string name = Upper(Trim(label));
  for (char& c : name) {
    if (!std::isupper(static_cast<unsigned char>(c)) &&
        !std::isdigit(static_cast<unsigned char>(c)) && c != '-' && c != '_')
      c = '-';
  }
  // Other labels always read ARG...; this keeps them distinguishable from
  // misspelled role names when parsing.
  if (!IsOtherName(name)) name = "ARG-" + name;
  if (auto k = KindFromName(name)) return RoleLabel(*k);
  RoleLabel r(Kind::kOther);
  r.other_ = std::move(name);
  return r;
}

std::string RoleLabel::name() const {
  if (kind_ == Kind::kOther) return other_;
  for (const auto& kn : kKindNames)
    if (kn.kind == kind_) return std::string(kn.name);
  return other_;
}

std::optional<RoleLabel> RoleLabel::FromName(std::string_view name) {
  if (auto k = KindFromName(name)) return RoleLabel(*k);
  if (IsOtherName(name)) return Other(name);
  return std::nullopt;
}

const std::vector<RoleLabel>& RoleLabel::Adjuncts() {
  static const std::vector<RoleLabel> kAdjuncts = {
      Kind::kTemporal, Kind::kLocative, Kind::kManner,    Kind::kCause,
      Kind::kExtent,   Kind::kPurpose,  Kind::kDiscourse, Kind::kGoal,
      Kind::kAdverbial, Kind::kModal,   Kind::kNegation};
  return kAdjuncts;
}

RoleLabel MapRoleLabel(std::string_view raw_tag,
                       std::optional<std::string_view> frame_function) {
  std::string tag = Upper(Trim(raw_tag));
  if (auto k = KindFromName(tag)) return RoleLabel(*k);
  if (tag.size() > 2 && (tag.rfind("B-", 0) == 0 || tag.rfind("I-", 0) == 0))
    tag = tag.substr(2);
  if (tag == "ARG0") return Kind::kAgent;
  if (tag == "ARG1") return Kind::kPatient;
  if (tag.rfind("ARGM-", 0) == 0) {
    if (auto k = KindFromFunction(tag.substr(5))) return RoleLabel(*k);
    return RoleLabel::Other(tag);
  }
  if (frame_function && tag.size() == 4 && tag.rfind("ARG", 0) == 0 &&
      tag[3] >= '2' && tag[3] <= '5') {
    std::string fn = Upper(Trim(*frame_function));
    if (auto k = KindFromFunction(fn)) return RoleLabel(*k);
    if (auto k = KindFromName(fn); k && *k != Kind::kAgent && *k != Kind::kPatient)
      return RoleLabel(*k);
  }
  return RoleLabel::Other(tag);
}

Span PredicateFrame::verb_group() const {
  int start = verb_index;
  while (std::binary_search(aux_indices.begin(), aux_indices.end(), start - 1))
    --start;
  return {start, verb_index + 1};
}

std::vector<std::string> SrlSentence::words(Span span) const {
  std::vector<std::string> out;
  for (int i = std::max(0, span.start); i < std::min(span.end, size()); ++i)
    out.push_back(tokens[i].text);
  return out;
}

std::vector<std::string> SrlSentence::words() const { return words({0, size()}); }

std::string SrlSentence::text(Span span) const { return JoinTokens(words(span)); }

std::string SrlSentence::text() const { return JoinTokens(words()); }

std::optional<std::size_t> FindArg(const PredicateFrame& frame,
                                   const RoleOccurrence& which) {
  int seen = 0;
  for (std::size_t i = 0; i < frame.args.size(); ++i) {
    if (frame.args[i].role == which.role) {
      if (seen == which.occurrence) return i;
      ++seen;
    }
  }
  return std::nullopt;
}

RoleOccurrence OccurrenceOf(const PredicateFrame& frame, std::size_t arg_index) {
  int seen = 0;
  for (std::size_t i = 0; i < arg_index; ++i)
    if (frame.args[i].role == frame.args[arg_index].role) ++seen;
  return {frame.args[arg_index].role, seen};
}

Specificity ClassifySpecificity(std::span<const std::string> keyword_tokens,
                                std::span<const std::string> span_tokens) {
  if (keyword_tokens.size() == 1 && keyword_tokens[0] == kAnyContent)
    return Specificity::kSparse;
  if (!IsFoldedSubsequence(keyword_tokens, span_tokens))
    throw ContractViolation("keyword \"" + JoinTokens(keyword_tokens) +
                            "\" is not a subsequence of \"" +
                            JoinTokens(span_tokens) + "\"");
  const std::size_t missing = span_tokens.size() - keyword_tokens.size();
  if (missing == 0) return Specificity::kComplete;
  if (missing <= 5) return Specificity::kPartial;
  return Specificity::kSparse;
}

std::vector<KeywordCandidate> ExtractKeywordCandidates(
    const ArgSpan& arg, const SrlSentence& sentence, std::uint64_t seed,
    const KeywordOptions& options) {
  const std::vector<std::string> span_words = sentence.words(arg.span());
  const int n = static_cast<int>(span_words.size());
  std::vector<KeywordCandidate> out;
  std::set<std::string> seen;
  auto add = [&](int b, int e) {
    std::span<const std::string> kw(span_words.data() + b, e - b);
    std::string content = JoinTokens(kw);
    if (options.lowercase) content = CaseFold(content);
    if (!seen.insert(CaseFold(content)).second) return;
    out.push_back({content, ClassifySpecificity(kw, span_words)});
  };

  add(0, n);
  for (int len = 1; len < n; ++len) add(0, len);
  for (const Span& c : sentence.chunks) {
    Span clipped{std::max(c.start, arg.start), std::min(c.end, arg.end)};
    if (clipped.size() > 0) add(clipped.start - arg.start, clipped.end - arg.start);
  }
  if (n > 1) {
    Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(arg.start),
                              static_cast<std::uint64_t>(arg.end)}));
    for (int k = 0; k < options.random_windows; ++k) {
      int len = static_cast<int>(rng.Range(1, n - 1));
      int b = static_cast<int>(rng.Range(0, n - len));
      add(b, b + len);
    }
  }
  if (seen.insert(std::string(kAnyContent)).second)
    out.push_back({std::string(kAnyContent), Specificity::kSparse});
  return out;
}

std::vector<int> DetectAuxiliaries(const SrlSentence& sentence, int verb_index,
                                   std::span<const ArgSpan> args) {
  std::vector<int> aux;
  int i = verb_index - 1;
  while (i >= 0) {
    const Token& t = sentence.tokens[i];
    if (i >= 1 && Folded(t) == "to" && Folded(sentence.tokens[i - 1]) == "going" &&
        !ArgAt(args, i) && !ArgAt(args, i - 1)) {
      aux.push_back(i);
      aux.push_back(i - 1);
      i -= 2;
      continue;
    }
    if (!ArgAt(args, i) && IsAuxWord(t)) {
      aux.push_back(i);
      --i;
      continue;
    }
    if (IsSkippable(sentence, args, i)) {
      --i;
      continue;
    }
    break;
  }
  // Inverted auxiliary in a question ("Do you prefer", "How did X defend"):
  // the scan stopped at the subject; look just before it.
  if (i >= 0 && sentence.size() > 0 && sentence.tokens.back().text == "?") {
    const ArgSpan* subj = ArgAt(args, i);
    if (subj && subj->role.kind() == Kind::kAgent) {
      int j = subj->start - 1;
      if (j >= 0 && !ArgAt(args, j) && IsAuxWord(sentence.tokens[j]))
        aux.push_back(j);
    }
  }
  std::sort(aux.begin(), aux.end());
  return aux;
}

VerbFeatures DetectVerbFeatures(const SrlSentence& sentence, int verb_index,
                                std::span<const int> aux_indices,
                                std::span<const ArgSpan> args) {
  if (verb_index < 0 || verb_index >= sentence.size())
    throw RangeError("verb index " + std::to_string(verb_index) +
                     " out of range");
  const Token& verb = sentence.tokens[verb_index];
  if (!verb.pos || verb.pos->empty())
    throw FeatureDetectionError("predicate token \"" + verb.text + "\" (index " +
                                std::to_string(verb_index) +
                                ") has no part-of-speech tag");
  VerbFeatures f;
  f.lemma = verb.lemma && !verb.lemma->empty() ? *verb.lemma : GuessLemma(verb.text);

  bool has_be = false;
  bool future = false;
  for (std::size_t k = 0; k < aux_indices.size(); ++k) {
    const Token& a = sentence.tokens[aux_indices[k]];
    if (IsBe(a)) has_be = true;
    if (FutureForms().count(Folded(a))) future = true;
    if (Folded(a) == "going" && k + 1 < aux_indices.size() &&
        Folded(sentence.tokens[aux_indices[k + 1]]) == "to")
      future = true;
  }
  for (const auto& arg : args) {
    if (arg.role.kind() != Kind::kModal) continue;
    for (int i = arg.start; i < arg.end; ++i)
      if (FutureForms().count(Folded(sentence.tokens[i]))) future = true;
  }
  f.voice = has_be && *verb.pos == "VBN" ? Voice::kPassive : Voice::kActive;
  if (future) {
    f.tense = Tense::kFuture;
  } else if (*verb.pos == "VBD") {
    f.tense = Tense::kPast;
  } else if (!aux_indices.empty() && IsPastAux(sentence.tokens[aux_indices[0]])) {
    f.tense = Tense::kPast;
  } else {
    f.tense = Tense::kPresent;
  }
  return f;
}

}  // namespace srlgen
