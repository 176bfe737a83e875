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

#include "srlgen/prompt.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "srlgen/error.h"
#include "srlgen/rng.h"
#include "srlgen/text.h"

namespace srlgen {

namespace {

bool HasMetaChar(std::string_view s) {
  return s.find_first_of("[]|") != std::string_view::npos;
}

bool IsLabelChar(char c) {
  return std::isupper(static_cast<unsigned char>(c)) ||
         std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

// Whitespace-delimited tokens with their byte offsets.
std::vector<std::pair<std::string_view, std::size_t>> TokensWithOffsets(
    std::string_view text, std::size_t base) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i), base + i);
    i = j;
  }
  return out;
}

std::optional<int> ParseSentinel(std::string_view tok, const SerializeOptions& o) {
  if (tok.size() <= o.sentinel_prefix.size() + o.sentinel_suffix.size()) return {};
  if (tok.substr(0, o.sentinel_prefix.size()) != o.sentinel_prefix) return {};
  if (tok.substr(tok.size() - o.sentinel_suffix.size()) != o.sentinel_suffix) return {};
  std::string_view digits = tok.substr(
      o.sentinel_prefix.size(),
      tok.size() - o.sentinel_prefix.size() - o.sentinel_suffix.size());
  if (digits.empty() || digits.size() > 6) return {};
  int v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return {};
    v = v * 10 + (c - '0');
  }
  return v;
}

ControlCode ParseCode(std::string_view raw, std::size_t offset) {
  std::size_t lead = 0;
  while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead]))) ++lead;
  std::string_view code = Trim(raw);
  offset += lead;
  if (code.empty()) throw ParseError("empty control code", offset);
  std::size_t colon = code.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("malformed control code: missing ':'", offset);
  std::string_view lhs = code.substr(0, colon);
  std::string_view rhs = Trim(code.substr(colon + 1));
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t plus = lhs.find('+', start);
    parts.push_back(lhs.substr(start, plus == std::string_view::npos
                                          ? std::string_view::npos
                                          : plus - start));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  const std::string_view name = parts[0];
  if (name == "VERB") {
    if (parts.size() != 3)
      throw ParseError("malformed verb code: expected VERB+voice+tense", offset);
    auto voice = ParseVoice(parts[1]);
    if (!voice) throw ParseError("unknown voice \"" + std::string(parts[1]) + "\"",
                                 offset + parts[0].size() + 1);
    auto tense = ParseTense(parts[2]);
    if (!tense)
      throw ParseError("unknown tense \"" + std::string(parts[2]) + "\"",
                       offset + parts[0].size() + parts[1].size() + 2);
    if (rhs.empty()) throw ParseError("empty verb lemma", offset + colon);
    VerbCode v;
    v.voice = *voice;
    v.tense = *tense;
    v.lemma = std::string(rhs);
    return v;
  }
  auto role = RoleLabel::FromName(name);
  if (!role) throw ParseError("unknown role name \"" + std::string(name) + "\"", offset);
  if (parts.size() > 2) throw ParseError("malformed argument code", offset);
  ArgCode a;
  a.role = *role;
  a.content = JoinTokens(SplitTokens(rhs));
  if (parts.size() == 1) {
    if (a.content != kAnyContent)
      throw ParseError("argument code without specificity must have '*' content",
                       offset + colon);
    return a;
  }
  auto spec = ParseSpecificity(parts[1]);
  if (!spec)
    throw ParseError("unknown specificity \"" + std::string(parts[1]) + "\"",
                     offset + name.size() + 1);
  if (a.content.empty() || a.content == kAnyContent)
    throw ParseError("argument code with specificity needs keyword content",
                     offset + colon);
  a.spec = spec;
  return a;
}

}  // namespace

const VerbCode* PromptSpec::verb() const {
  for (const auto& c : header)
    if (auto* v = std::get_if<VerbCode>(&c)) return v;
  return nullptr;
}

VerbCode* PromptSpec::verb() {
  for (auto& c : header)
    if (auto* v = std::get_if<VerbCode>(&c)) return v;
  return nullptr;
}

std::optional<std::size_t> PromptSpec::FindCode(const RoleLabel& role,
                                                int occurrence) const {
  int seen = 0;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto* a = std::get_if<ArgCode>(&header[i]);
    if (a && a->role == role) {
      if (seen == occurrence) return i;
      ++seen;
    }
  }
  return std::nullopt;
}

int PromptSpec::num_blanks() const {
  return static_cast<int>(std::count_if(context.begin(), context.end(),
                                        [](const ContextItem& c) { return c.is_blank(); }));
}

std::optional<std::size_t> PromptSpec::BlankPosition(int slot) const {
  for (std::size_t i = 0; i < context.size(); ++i)
    if (context[i].is_blank() && context[i].slot == slot) return i;
  return std::nullopt;
}

bool IsCanonicalOrder(const std::vector<ControlCode>& header) {
  if (header.empty() || !std::holds_alternative<VerbCode>(header[0])) return false;
  int stage = 0;  // 0 agent, 1 patient, 2 others
  for (std::size_t i = 1; i < header.size(); ++i) {
    const auto* a = std::get_if<ArgCode>(&header[i]);
    if (!a) return false;
    int s = a->role.kind() == RoleLabel::Kind::kAgent     ? 0
            : a->role.kind() == RoleLabel::Kind::kPatient ? 1
                                                          : 2;
    if (s < stage) return false;
    stage = s;
  }
  return true;
}

void ValidatePrompt(const PromptSpec& p) {
  if (p.header.empty() || !std::holds_alternative<VerbCode>(p.header[0]))
    throw ContractViolation("header must start with the verb code");
  std::set<int> used;
  const int k = p.num_blanks();
  for (std::size_t i = 0; i < p.header.size(); ++i) {
    std::optional<int> slot;
    if (const auto* v = std::get_if<VerbCode>(&p.header[i])) {
      if (i != 0) throw ContractViolation("more than one verb code");
      if (v->lemma.empty() || HasMetaChar(v->lemma) ||
          SplitTokens(v->lemma).empty())
        throw ContractViolation("bad verb lemma \"" + v->lemma + "\"");
      slot = v->slot;
    } else {
      const auto& a = std::get<ArgCode>(p.header[i]);
      if (a.content.empty() || HasMetaChar(a.content))
        throw ContractViolation("bad keyword content \"" + a.content + "\"");
      if (a.is_any() == a.spec.has_value())
        throw ContractViolation("specificity must be present iff content is not '*'");
      slot = a.slot;
    }
    if (slot) {
      if (*slot < 0 || *slot >= k)
        throw ContractViolation("code slot " + std::to_string(*slot) + " out of range");
      if (!used.insert(*slot).second)
        throw ContractViolation("slot " + std::to_string(*slot) + " assigned twice");
    }
  }
  int next = 0;
  for (const auto& c : p.context) {
    if (c.is_blank()) {
      if (c.slot != next) throw ContractViolation("blanks not numbered left to right");
      ++next;
    } else if (c.text.empty() || SplitTokens(c.text).size() != 1) {
      throw ContractViolation("bad context literal \"" + c.text + "\"");
    }
  }
}

void RenumberBlanks(PromptSpec& p) {
  std::map<int, int> remap;
  int next = 0;
  for (auto& c : p.context) {
    if (!c.is_blank()) continue;
    remap[c.slot] = next;
    c.slot = next++;
  }
  for (auto& code : p.header) {
    std::optional<int>& slot = std::visit(
        [](auto& c) -> std::optional<int>& { return c.slot; }, code);
    if (!slot) continue;
    auto it = remap.find(*slot);
    if (it == remap.end()) slot.reset();
    else slot = it->second;
  }
}

ArgCode MakeArgCode(const RoleLabel& role, std::string content,
                    std::optional<Specificity> spec) {
  ArgCode a;
  a.role = role;
  a.content = JoinTokens(SplitTokens(content));
  if (a.content == kAnyContent) {
    a.spec.reset();
  } else {
    a.spec = spec.value_or(Specificity::kComplete);
  }
  return a;
}

std::vector<int> EligibleBoundaries(const SrlSentence& sentence, int frame_idx) {
  const PredicateFrame& frame = sentence.frames.at(frame_idx);
  const Span vg = frame.verb_group();
  std::vector<int> out;
  for (int b = 0; b <= sentence.size(); ++b) {
    bool inside = vg.start < b && b < vg.end;
    for (const auto& a : frame.args)
      if (a.start < b && b < a.end) inside = true;
    if (!inside) out.push_back(b);
  }
  return out;
}

PromptSpec Compile(const SrlSentence& sentence, const CompileRequest& request) {
  return Compile(std::make_shared<const SrlSentence>(sentence), request);
}

PromptSpec Compile(std::shared_ptr<const SrlSentence> sentence,
                   const CompileRequest& req) {
  if (!sentence) throw ContractViolation("null sentence");
  const SrlSentence& s = *sentence;
  if (req.frame_idx < 0 || req.frame_idx >= static_cast<int>(s.frames.size()))
    throw ContractViolation("frame index " + std::to_string(req.frame_idx) +
                            " out of range");
  if (req.n_extra_blanks < 0) throw ContractViolation("negative extra blank count");
  const PredicateFrame& frame = s.frames[req.frame_idx];
  const int n = s.size();

  std::set<std::size_t> masked;
  for (const auto& occ : req.mask) {
    auto idx = FindArg(frame, occ);
    if (!idx)
      throw UnknownRoleError("role " + occ.role.name() + " (occurrence " +
                             std::to_string(occ.occurrence) + ") not in frame");
    masked.insert(*idx);
  }

  std::vector<int> extras_at(n + 1, 0);
  if (req.extra_blank_boundaries) {
    for (int b : *req.extra_blank_boundaries) {
      if (b < 0 || b > n)
        throw RangeError("extra blank boundary " + std::to_string(b) + " out of range");
      ++extras_at[b];
    }
  } else if (req.n_extra_blanks > 0) {
    const std::vector<int> eligible = EligibleBoundaries(s, req.frame_idx);
    Rng rng(DeriveSeed(req.seed, {TagHash("extra-blanks")}));
    for (int k = 0; k < req.n_extra_blanks; ++k) ++extras_at[rng.Pick(eligible)];
  }

  PromptSpec p;
  p.source = sentence;
  p.frame_idx = req.frame_idx;

  VerbCode verb;
  verb.voice = frame.voice;
  verb.tense = frame.tense;
  verb.lemma = frame.lemma;
  verb.origin = frame.verb_group();

  std::map<std::size_t, int> arg_slot;
  const Span vg = frame.verb_group();
  // An unmasked future modal ("will" tagged MODAL) is carried by the verb
  // code's tense, so it is blanked like an auxiliary.
  std::set<int> folded;
  if (frame.tense == Tense::kFuture) {
    for (std::size_t a = 0; a < frame.args.size(); ++a) {
      const ArgSpan& arg = frame.args[a];
      if (masked.count(a) || arg.role.kind() != RoleLabel::Kind::kModal || arg.span().size() != 1 ||
          arg.start >= vg.start)
        continue;
      const std::string w = CaseFold(s.tokens[arg.start].text);
      if (w == "will" || w == "shall" || w == "'ll" || w == "wo") folded.insert(arg.start);
    }
  }
  int slot = 0;
  for (int i = 0; i <= n;) {
    for (int k = 0; k < extras_at[i]; ++k) p.context.push_back(ContextItem::Blank(slot++));
    if (i == n) break;
    if (i == vg.start) {
      verb.slot = slot;
      p.context.push_back(ContextItem::Blank(slot++));
      i = vg.end;
      continue;
    }
    std::optional<std::size_t> starts;
    for (std::size_t a : masked)
      if (frame.args[a].start == i) starts = a;
    if (starts) {
      arg_slot[*starts] = slot;
      p.context.push_back(ContextItem::Blank(slot++));
      i = frame.args[*starts].end;
      continue;
    }
    if (std::binary_search(frame.aux_indices.begin(), frame.aux_indices.end(), i) ||
        folded.count(i)) {
      p.context.push_back(ContextItem::Blank(slot++));
      ++i;
      continue;
    }
    p.context.push_back(ContextItem::Literal(s.tokens[i].text, i));
    ++i;
  }

  std::vector<ArgCode> agents, patients, others;
  for (std::size_t a : masked) {
    const ArgSpan& arg = frame.args[a];
    const RoleOccurrence occ = OccurrenceOf(frame, a);
    ArgCode code;
    auto kw = req.keywords.find(occ);
    if (kw != req.keywords.end()) {
      code = MakeArgCode(arg.role, kw->second.content, kw->second.spec);
    } else {
      code = MakeArgCode(arg.role, s.text(arg.span()), Specificity::kComplete);
    }
    code.slot = arg_slot.at(a);
    code.origin = arg.span();
    if (arg.role.kind() == RoleLabel::Kind::kAgent) agents.push_back(code);
    else if (arg.role.kind() == RoleLabel::Kind::kPatient) patients.push_back(code);
    else others.push_back(code);
  }
  Rng rng(DeriveSeed(req.seed, {TagHash("adjunct-order")}));
  rng.Shuffle(others);
  p.header.push_back(verb);
  for (auto* group : {&agents, &patients, &others})
    for (auto& c : *group) p.header.push_back(std::move(c));
  ValidatePrompt(p);
  return p;
}

std::string SerializeCode(const ControlCode& code) {
  if (const auto* v = std::get_if<VerbCode>(&code)) {
    return "VERB+" + std::string(ToString(v->voice)) + "+" +
           std::string(ToString(v->tense)) + ": " + v->lemma;
  }
  const auto& a = std::get<ArgCode>(code);
  if (!a.spec) return a.role.name() + ": " + a.content;
  return a.role.name() + "+" + std::string(ToString(*a.spec)) + ": " + a.content;
}

std::string SerializeHeader(const std::vector<ControlCode>& header) {
  std::string out = "[";
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out += " | ";
    out += SerializeCode(header[i]);
  }
  out += "]";
  return out;
}

std::string Serialize(const PromptSpec& prompt, const SerializeOptions& options) {
  std::string out = SerializeHeader(prompt.header);
  for (const auto& item : prompt.context) {
    out += ' ';
    if (item.is_blank()) {
      out += options.sentinel_prefix + std::to_string(item.slot) +
             options.sentinel_suffix;
    } else {
      out += item.text;
    }
  }
  return out;
}

PromptSpec ParsePrompt(std::string_view text, const SerializeOptions& options) {
  if (text.empty() || text[0] != '[')
    throw ParseError("prompt must start with '['", 0);
  std::size_t close = text.find(']');
  std::size_t nested = text.find('[', 1);
  if (nested != std::string_view::npos && (close == std::string_view::npos || nested < close))
    throw ParseError("unbalanced bracket: nested '['", nested);
  if (close == std::string_view::npos)
    throw ParseError("unbalanced bracket: header not closed", text.size());

  PromptSpec p;
  std::string_view body = text.substr(1, close - 1);
  std::size_t start = 0;
  while (true) {
    std::size_t bar = body.find('|', start);
    std::string_view piece = body.substr(
        start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    ControlCode code = ParseCode(piece, 1 + start);
    if (std::holds_alternative<VerbCode>(code) != p.header.empty())
      throw ParseError(p.header.empty() ? "header must start with the verb code"
                                        : "more than one verb code",
                       1 + start);
    p.header.push_back(std::move(code));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }

  std::string_view rest = text.substr(close + 1);
  if (!rest.empty() && rest[0] != ' ')
    throw ParseError("expected a space after the header", close + 1);
  int next = 0;
  for (const auto& [tok, off] : TokensWithOffsets(rest, close + 1)) {
    if (auto slot = ParseSentinel(tok, options)) {
      if (*slot != next)
        throw ParseError("blank " + std::to_string(*slot) + " out of order, expected " +
                             std::to_string(next),
                         off);
      p.context.push_back(ContextItem::Blank(next++));
    } else {
      p.context.push_back(ContextItem::Literal(std::string(tok)));
    }
  }
  return p;
}

std::string BuildTarget(const SrlSentence& sentence, const PromptSpec& prompt) {
  if (prompt.source && prompt.source.get() != &sentence &&
      prompt.source->words() != sentence.words())
    throw ContractViolation("prompt was compiled from a different sentence");
  const VerbCode* verb = prompt.verb();
  if (!verb || !verb->origin)
    throw ContractViolation("prompt carries no compile metadata for the verb");
  struct Wrap {
    Span span;
    std::string label;
  };
  std::vector<Wrap> wraps = {{*verb->origin, "VERB"}};
  for (const auto& code : prompt.header) {
    const auto* a = std::get_if<ArgCode>(&code);
    if (a && a->origin) wraps.push_back({*a->origin, a->role.name()});
  }
  std::sort(wraps.begin(), wraps.end(),
            [](const Wrap& x, const Wrap& y) { return x.span.start < y.span.start; });
  for (std::size_t i = 0; i < wraps.size(); ++i) {
    const Span& sp = wraps[i].span;
    if (sp.start < 0 || sp.end > sentence.size() || sp.size() <= 0)
      throw ContractViolation("masked span out of range for sentence");
    if (i > 0 && wraps[i - 1].span.overlaps(sp))
      throw ContractViolation("masked spans overlap");
  }
  std::vector<std::string> parts;
  std::size_t w = 0;
  for (int i = 0; i < sentence.size();) {
    if (w < wraps.size() && wraps[w].span.start == i) {
      parts.push_back("[" + wraps[w].label + ": " + sentence.text(wraps[w].span) + "]");
      i = wraps[w].span.end;
      ++w;
    } else {
      parts.push_back(sentence.tokens[i].text);
      ++i;
    }
  }
  return JoinTokens(parts);
}

std::string TaggedOutput::text() const {
  std::vector<std::string> parts;
  for (const auto& s : segments)
    if (!s.text.empty()) parts.push_back(s.text);
  return JoinTokens(parts);
}

std::string TaggedOutput::render() const {
  std::vector<std::string> parts;
  for (const auto& s : segments) {
    if (s.label) parts.push_back("[" + *s.label + ": " + s.text + "]");
    else if (!s.text.empty()) parts.push_back(s.text);
  }
  return JoinTokens(parts);
}

TaggedOutput ParseTaggedOutput(std::string_view text) {
  TaggedOutput out;
  std::string literal;
  auto flush = [&] {
    auto toks = SplitTokens(literal);
    if (!toks.empty()) out.segments.push_back({std::nullopt, JoinTokens(toks)});
    literal.clear();
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ']') throw ParseError("unbalanced bracket: stray ']'", i);
    if (c != '[') {
      literal += c;
      ++i;
      continue;
    }
    flush();
    std::size_t close = text.find(']', i + 1);
    std::size_t nested = text.find('[', i + 1);
    if (close == std::string_view::npos)
      throw ParseError("unbalanced bracket: tag not closed", i);
    if (nested != std::string_view::npos && nested < close)
      throw ParseError("unbalanced bracket: nested '['", nested);
    std::size_t colon = text.find(':', i + 1);
    if (colon == std::string_view::npos || colon > close)
      throw ParseError("malformed tag: missing ':'", i);
    std::string_view label = text.substr(i + 1, colon - i - 1);
    if (label.empty() || !std::all_of(label.begin(), label.end(), IsLabelChar))
      throw ParseError("malformed tag label", i + 1);
    out.segments.push_back(
        {std::string(label),
         JoinTokens(SplitTokens(text.substr(colon + 1, close - colon - 1)))});
    i = close + 1;
  }
  flush();
  return out;
}

}  // namespace srlgen
