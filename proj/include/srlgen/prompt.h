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

#ifndef SRLGEN_PROMPT_H_
#define SRLGEN_PROMPT_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "srlgen/srl.h"

namespace srlgen {

struct VerbCode {
  Voice voice = Voice::kActive;
  Tense tense = Tense::kPresent;
  std::string lemma;

  // Metadata, not part of equality: the blank slot realizing the verb and
  // the verb group it was compiled from.
  std::optional<int> slot;
  std::optional<Span> origin;

  friend bool operator==(const VerbCode& a, const VerbCode& b) {
    return a.voice == b.voice && a.tense == b.tense && a.lemma == b.lemma;
  }
};

struct ArgCode {
  RoleLabel role = RoleLabel::Kind::kAgent;
  std::optional<Specificity> spec;  // absent iff content is "*"
  std::string content;

  std::optional<int> slot;
  std::optional<Span> origin;

  bool is_any() const { return content == kAnyContent; }
  friend bool operator==(const ArgCode& a, const ArgCode& b) {
    return a.role == b.role && a.spec == b.spec && a.content == b.content;
  }
};

using ControlCode = std::variant<VerbCode, ArgCode>;

struct ContextItem {
  enum class Kind { kLiteral, kBlank };

  Kind kind = Kind::kLiteral;
  std::string text;  // literal token
  int slot = 0;      // blank id

  std::optional<int> token_index;  // metadata: source position of a literal

  static ContextItem Literal(std::string text, std::optional<int> token_index = {}) {
    ContextItem c;
    c.text = std::move(text);
    c.token_index = token_index;
    return c;
  }
  static ContextItem Blank(int slot) {
    ContextItem c;
    c.kind = Kind::kBlank;
    c.slot = slot;
    return c;
  }
  bool is_blank() const { return kind == Kind::kBlank; }
  friend bool operator==(const ContextItem& a, const ContextItem& b) {
    if (a.kind != b.kind) return false;
    return a.is_blank() ? a.slot == b.slot : a.text == b.text;
  }
};

struct PromptSpec {
  std::vector<ControlCode> header;
  std::vector<ContextItem> context;

  // Originating sentence/frame; absent for parsed prompts.
  std::shared_ptr<const SrlSentence> source;
  int frame_idx = -1;

  const VerbCode* verb() const;
  VerbCode* verb();
  // Header index of the `occurrence`-th code carrying `role`.
  std::optional<std::size_t> FindCode(const RoleLabel& role, int occurrence = 0) const;
  int num_blanks() const;
  // Context position of blank `slot`.
  std::optional<std::size_t> BlankPosition(int slot) const;

  friend bool operator==(const PromptSpec& a, const PromptSpec& b) {
    return a.header == b.header && a.context == b.context;
  }
};

// verb first; AGENT codes, then PATIENT codes, then everything else.
bool IsCanonicalOrder(const std::vector<ControlCode>& header);

// Checks the documented invariants (verb first, content/spec coupling,
// blanks numbered 0..k-1 left to right, code slots distinct and in range,
// contents free of grammar metacharacters). Throws ContractViolation.
void ValidatePrompt(const PromptSpec& prompt);

// Renumbers blanks 0..k-1 left to right and rewrites code slot references.
void RenumberBlanks(PromptSpec& prompt);

// ArgCode for a keyword choice; "*" content drops the specificity.
ArgCode MakeArgCode(const RoleLabel& role, std::string content,
                    std::optional<Specificity> spec);

struct CompileRequest {
  int frame_idx = 0;
  std::vector<RoleOccurrence> mask;
  int n_extra_blanks = 0;
  std::map<RoleOccurrence, KeywordCandidate> keywords;  // default: exact span, complete
  std::uint64_t seed = 0;
  // When set, extra blanks go at these token boundaries (0..n) instead of
  // seeded positions; its size overrides n_extra_blanks.
  std::optional<std::vector<int>> extra_blank_boundaries;
};

// Token boundaries (0..n) outside every argument span and the verb group.
std::vector<int> EligibleBoundaries(const SrlSentence& sentence, int frame_idx);

PromptSpec Compile(std::shared_ptr<const SrlSentence> sentence,
                   const CompileRequest& request);
PromptSpec Compile(const SrlSentence& sentence, const CompileRequest& request);

struct SerializeOptions {
  std::string sentinel_prefix = "<extra_id_";
  std::string sentinel_suffix = ">";
};

std::string Serialize(const PromptSpec& prompt, const SerializeOptions& options = {});
std::string SerializeHeader(const std::vector<ControlCode>& header);
std::string SerializeCode(const ControlCode& code);

PromptSpec ParsePrompt(std::string_view text, const SerializeOptions& options = {});

// The sentence with every masked span wrapped as "[ROLE: text]" and the
// verb group as "[VERB: text]". Throws ContractViolation when the prompt
// was not compiled from this sentence.
std::string BuildTarget(const SrlSentence& sentence, const PromptSpec& prompt);

struct TaggedSegment {
  std::optional<std::string> label;  // "VERB", a role name, or none for literal text
  std::string text;

  friend bool operator==(const TaggedSegment&, const TaggedSegment&) = default;
};

struct TaggedOutput {
  std::vector<TaggedSegment> segments;

  // Untagged sentence text.
  std::string text() const;
  // Tagged rendering ("[ROLE: text]" segments), single-space joined.
  std::string render() const;

  friend bool operator==(const TaggedOutput&, const TaggedOutput&) = default;
};

TaggedOutput ParseTaggedOutput(std::string_view text);

}  // namespace srlgen

#endif  // SRLGEN_PROMPT_H_
