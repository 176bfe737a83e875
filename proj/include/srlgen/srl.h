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

#ifndef SRLGEN_SRL_H_
#define SRLGEN_SRL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace srlgen {

enum class Voice { kActive, kPassive };
enum class Tense { kPast, kPresent, kFuture };

// Ordered: kComplete > kPartial > kSparse.
enum class Specificity { kSparse = 0, kPartial = 1, kComplete = 2 };

std::string_view ToString(Voice voice);
std::string_view ToString(Tense tense);
std::string_view ToString(Specificity spec);
std::optional<Voice> ParseVoice(std::string_view text);
std::optional<Tense> ParseTense(std::string_view text);
std::optional<Specificity> ParseSpecificity(std::string_view text);

// Human-readable semantic role. The enumerated kinds cover PropBank ARG0/ARG1
// and the ARGM modifiers; anything else is an "other" label that carries its
// own uppercase name (typically the raw tag, e.g. "ARG3").
class RoleLabel {
 public:
  enum class Kind {
    kAgent,
    kPatient,
    kTemporal,
    kLocative,
    kManner,
    kCause,
    kExtent,
    kPurpose,
    kDiscourse,
    kGoal,
    kAdverbial,
    kModal,
    kNegation,
    kDirection,
    kPredicative,
    kComitative,
    kReciprocal,
    kOther,
  };

  RoleLabel(Kind kind) : kind_(kind) {}  // NOLINT: implicit by design of enum use
  static RoleLabel Other(std::string_view label);

  Kind kind() const { return kind_; }
  bool is_core() const { return kind_ == Kind::kAgent || kind_ == Kind::kPatient; }
  bool is_other() const { return kind_ == Kind::kOther; }
  std::string name() const;

  // Parses a serialized label: one of the enumerated names or an "other"
  // label of the form ARG<...> (uppercase ASCII, digits, '-').
  static std::optional<RoleLabel> FromName(std::string_view name);

  // The adjunct vocabulary used when a role has to be swapped for a
  // different adjunct.
  static const std::vector<RoleLabel>& Adjuncts();

  friend bool operator==(const RoleLabel&, const RoleLabel&) = default;
  friend auto operator<=>(const RoleLabel&, const RoleLabel&) = default;

 private:
  Kind kind_;
  std::string other_;
};

// ARG0 -> AGENT, ARG1 -> PATIENT, ARGM-* -> modifier kinds. ARG2..ARG5 use
// `frame_function` (a PropBank function code such as "LOC" or a role name)
// when it maps onto a known kind, and otherwise fall back to other(raw_tag).
// Total: unrecognized input never fails. Canonical names map to themselves.
RoleLabel MapRoleLabel(std::string_view raw_tag,
                       std::optional<std::string_view> frame_function = {});

struct Token {
  std::string text;
  int index = 0;
  std::optional<std::string> pos;
  std::optional<std::string> lemma;
};

// Half-open token range [start, end).
struct Span {
  int start = 0;
  int end = 0;

  int size() const { return end - start; }
  bool contains(int i) const { return i >= start && i < end; }
  bool overlaps(const Span& o) const { return start < o.end && o.start < end; }
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct ArgSpan {
  RoleLabel role;
  int start = 0;
  int end = 0;
  std::string raw_tag;

  Span span() const { return {start, end}; }
};

struct PredicateFrame {
  int verb_index = 0;
  std::string lemma;
  Voice voice = Voice::kActive;
  Tense tense = Tense::kPresent;
  std::vector<ArgSpan> args;
  std::vector<int> aux_indices;  // ascending
  // Referent arguments (raw tags R-*/B-R-*). Excluded from prompts but kept
  // for relative-clause detection.
  std::vector<ArgSpan> referents;

  // The predicate plus the auxiliaries directly preceding it.
  Span verb_group() const;
};

struct SrlSentence {
  std::string id;
  std::vector<Token> tokens;
  std::vector<PredicateFrame> frames;
  std::vector<Span> chunks;

  int size() const { return static_cast<int>(tokens.size()); }
  std::vector<std::string> words(Span span) const;
  std::vector<std::string> words() const;
  std::string text(Span span) const;
  std::string text() const;
};

// Identifies one argument of a frame: the `occurrence`-th argument carrying
// `role` (frames may repeat adjunct roles).
struct RoleOccurrence {
  RoleLabel role;
  int occurrence = 0;

  friend bool operator==(const RoleOccurrence&, const RoleOccurrence&) = default;
  friend auto operator<=>(const RoleOccurrence&, const RoleOccurrence&) = default;
};

// Index into frame.args, or nullopt.
std::optional<std::size_t> FindArg(const PredicateFrame& frame,
                                   const RoleOccurrence& which);
RoleOccurrence OccurrenceOf(const PredicateFrame& frame, std::size_t arg_index);

// complete iff the keyword covers every span token, partial iff it misses at
// most five, sparse otherwise; "*" is keyed as sparse. Throws
// ContractViolation unless the keyword is a case-folded subsequence of the
// span.
Specificity ClassifySpecificity(std::span<const std::string> keyword_tokens,
                                std::span<const std::string> span_tokens);

inline constexpr std::string_view kAnyContent = "*";

struct KeywordCandidate {
  std::string content;
  Specificity spec;

  friend bool operator==(const KeywordCandidate&, const KeywordCandidate&) = default;
};

struct KeywordOptions {
  bool lowercase = false;
  int random_windows = 3;
};

// Exact span, every prefix, noun chunks clipped to the span, seeded random
// contiguous windows, and "*"; deduplicated keeping first occurrence.
std::vector<KeywordCandidate> ExtractKeywordCandidates(
    const ArgSpan& arg, const SrlSentence& sentence, std::uint64_t seed,
    const KeywordOptions& options = {});

struct VerbFeatures {
  Voice voice;
  Tense tense;
  std::string lemma;

  friend bool operator==(const VerbFeatures&, const VerbFeatures&) = default;
};

// Auxiliary verbs governing the predicate: scanning left from the verb over
// modal/be/have/do tokens (and "going to"), skipping negation and adverbs.
// Tokens inside argument spans are never auxiliaries.
std::vector<int> DetectAuxiliaries(const SrlSentence& sentence, int verb_index,
                                   std::span<const ArgSpan> args);

// Rule-based voice/tense/lemma detection over POS-tagged tokens. Throws
// FeatureDetectionError when the predicate has no POS tag.
VerbFeatures DetectVerbFeatures(const SrlSentence& sentence, int verb_index,
                                std::span<const int> aux_indices,
                                std::span<const ArgSpan> args = {});

}  // namespace srlgen

#endif  // SRLGEN_SRL_H_
