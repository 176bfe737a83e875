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

#include "srlgen/perturb.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "srlgen/error.h"
#include "srlgen/rng.h"
#include "srlgen/text.h"

namespace srlgen {

namespace {

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

class ProgramParser {
 public:
  explicit ProgramParser(std::string_view text) : text_(text) {}

  OpProgram Parse() {
    OpProgram program;
    SkipSpace();
    if (AtEnd()) throw ParseError("empty program", pos_);
    while (true) {
      program.clauses.push_back(ParseClause());
      SkipSpace();
      if (AtEnd()) break;
      if (text_[pos_] == ';' || text_[pos_] == '|') {
        ++pos_;
        continue;
      }
      throw ParseError("expected ';' between clauses", pos_);
    }
    return program;
  }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }
  void SkipSpace() {
    while (!AtEnd() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string_view Ident() {
    std::size_t b = pos_;
    while (!AtEnd() && IsIdentChar(text_[pos_])) ++pos_;
    return text_.substr(b, pos_ - b);
  }

  Clause ParseClause() {
    SkipSpace();
    std::size_t off = pos_;
    std::string_view ident = Ident();
    if (ident.empty()) throw ParseError("expected an operation", off);
    SkipSpace();
    Clause clause;
    if (!AtEnd() && text_[pos_] == ':') {
      ++pos_;
      if (ident != "VERB") {
        auto role = RoleLabel::FromName(ident);
        if (!role) throw ParseError("unknown role \"" + std::string(ident) + "\"", off);
        clause.role = *role;
      }
      SkipSpace();
      off = pos_;
      ident = Ident();
      if (ident.empty()) throw ParseError("expected an operation", off);
    }
    while (true) {
      PerturbOp op = ParseOp(ident, off);
      if (IsRoleScoped(op.kind) != clause.role.has_value()) {
        throw ParseError(std::string(OpName(op.kind)) +
                             (clause.role ? " does not take a role scope"
                                          : " needs a role scope"),
                         off);
      }
      if (op.kind == OpKind::kDelete && !deleted_.insert(clause.role->name()).second)
        throw ParseError("more than one DELETE for " + clause.role->name(), off);
      clause.ops.push_back(std::move(op));
      SkipSpace();
      if (AtEnd() || text_[pos_] != ',') break;
      ++pos_;
      SkipSpace();
      off = pos_;
      ident = Ident();
      if (ident.empty()) throw ParseError("expected an operation after ','", off);
    }
    return clause;
  }

  // Balanced "(...)" argument, or nullopt when absent.
  std::optional<std::string> Arg() {
    SkipSpace();
    if (AtEnd() || text_[pos_] != '(') return std::nullopt;
    std::size_t open = pos_;
    int depth = 0;
    for (std::size_t i = pos_; i < text_.size(); ++i) {
      if (text_[i] == '(') ++depth;
      if (text_[i] == ')' && --depth == 0) {
        pos_ = i + 1;
        return std::string(Trim(text_.substr(open + 1, i - open - 1)));
      }
    }
    throw ParseError("unbalanced parenthesis", open);
  }

  static std::optional<int> Int(std::string_view s) {
    s = Trim(s);
    if (s.empty() || s.size() > 9) return std::nullopt;
    int v = 0;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      v = v * 10 + (c - '0');
    }
    return v;
  }

  static std::optional<std::pair<int, int>> Range(std::string_view s) {
    std::size_t colon = s.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto a = Int(s.substr(0, colon));
    auto b = Int(s.substr(colon + 1));
    if (!a || !b) return std::nullopt;
    return std::make_pair(*a, *b);
  }

  PerturbOp ParseOp(std::string_view name, std::size_t off) {
    std::optional<std::string> arg = Arg();
    auto need = [&](const char* what) -> const std::string& {
      if (!arg || arg->empty())
        throw ParseError(std::string(name) + " expects " + what, off);
      return *arg;
    };
    auto none = [&] {
      if (arg) throw ParseError(std::string(name) + " takes no argument", off);
    };
    PerturbOp op;
    if (name == "CHANGE_VTENSE" || name == "CHANGE_VFORM") {
      op.kind = OpKind::kChangeVTense;
      op.tense = ParseTense(need("a tense"));
      if (!op.tense) throw ParseError("unknown tense \"" + *arg + "\"", off);
    } else if (name == "CHANGE_VVOICE" || name == "CHANGE_VOICE") {
      op.kind = OpKind::kChangeVVoice;
      op.voice = ParseVoice(need("a voice"));
      if (!op.voice) throw ParseError("unknown voice \"" + *arg + "\"", off);
    } else if (name == "CHANGE_VLEMMA") {
      op.kind = OpKind::kChangeVLemma;
      op.text = JoinTokens(SplitTokens(need("a lemma")));
    } else if (name == "SWAP_CORE") {
      none();
      op.kind = OpKind::kSwapCore;
    } else if (name == "CORE") {
      if (need("SWAP_CORE") != "SWAP_CORE")
        throw ParseError("CORE supports only SWAP_CORE", off);
      op.kind = OpKind::kSwapCore;
    } else if (name == "CHANGE_IDX") {
      op.kind = OpKind::kChangeIdx;
      op.range = Range(need("a from:to pair"));
      if (!op.range) throw ParseError("CHANGE_IDX expects from:to", off);
    } else if (name == "MOVE") {
      op.kind = OpKind::kMove;
      if (arg) {
        op.position = Int(*arg);
        if (!op.position) throw ParseError("MOVE expects a position", off);
      }
    } else if (name == "CHANGE_CONTENT" || name == "CONTENT") {
      op.kind = OpKind::kChangeContent;
      op.text = JoinTokens(SplitTokens(need("keyword content")));
    } else if (name == "CHANGE_SPEC" || name == "SPEC") {
      op.kind = OpKind::kChangeSpec;
      op.spec = ParseSpecificity(need("a specificity"));
      if (!op.spec) throw ParseError("unknown specificity \"" + *arg + "\"", off);
    } else if (name == "DELETE") {
      none();
      op.kind = OpKind::kDelete;
    } else if (name == "CONTEXT_DELETE_TEXT") {
      op.kind = OpKind::kContextDeleteText;
      if (arg) {
        op.range = Range(*arg);
        if (!op.range) throw ParseError("CONTEXT_DELETE_TEXT expects start:end", off);
      }
    } else if (name == "CONTEXT") {
      op.kind = OpKind::kContextDeleteText;
      std::string_view a = need("DELETE_TEXT");
      if (a.substr(0, 11) != "DELETE_TEXT")
        throw ParseError("CONTEXT supports only DELETE_TEXT", off);
      std::string_view rest = Trim(a.substr(11));
      if (!rest.empty()) {
        if (rest.front() != '(' || rest.back() != ')')
          throw ParseError("malformed DELETE_TEXT range", off);
        op.range = Range(rest.substr(1, rest.size() - 2));
        if (!op.range) throw ParseError("malformed DELETE_TEXT range", off);
      }
    } else {
      throw ParseError("unknown operation \"" + std::string(name) + "\"", off);
    }
    return op;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::set<std::string> deleted_;
};

std::string RenderOp(const PerturbOp& op) {
  std::string name(OpName(op.kind));
  switch (op.kind) {
    case OpKind::kChangeVTense:
      return name + "(" + std::string(ToString(*op.tense)) + ")";
    case OpKind::kChangeVVoice:
      return name + "(" + std::string(ToString(*op.voice)) + ")";
    case OpKind::kChangeVLemma:
    case OpKind::kChangeContent:
      return name + "(" + op.text + ")";
    case OpKind::kChangeSpec:
      return name + "(" + std::string(ToString(*op.spec)) + ")";
    case OpKind::kChangeIdx:
      return name + "(" + std::to_string(op.range->first) + ":" +
             std::to_string(op.range->second) + ")";
    case OpKind::kMove:
      return op.position ? name + "(" + std::to_string(*op.position) + ")" : name;
    case OpKind::kContextDeleteText:
      if (!op.range) return name;
      return name + "(" + std::to_string(op.range->first) + ":" +
             std::to_string(op.range->second) + ")";
    case OpKind::kSwapCore:
    case OpKind::kDelete:
      return name;
  }
  return name;
}

// ---- apply ----

const PredicateFrame* SourceFrame(const PromptSpec& p) {
  if (!p.source || p.frame_idx < 0 ||
      p.frame_idx >= static_cast<int>(p.source->frames.size()))
    return nullptr;
  return &p.source->frames[p.frame_idx];
}

// Source arg index owning a literal, if known.
std::optional<std::size_t> LiteralOwner(const PromptSpec& p, const ContextItem& item) {
  const PredicateFrame* f = SourceFrame(p);
  if (!f || item.is_blank() || !item.token_index) return std::nullopt;
  for (std::size_t i = 0; i < f->args.size(); ++i)
    if (f->args[i].span().contains(*item.token_index)) return i;
  return std::nullopt;
}

bool InFrame(const PromptSpec& p, const ContextItem& item) {
  const PredicateFrame* f = SourceFrame(p);
  if (!f || !item.token_index) return false;
  const int t = *item.token_index;
  if (f->verb_group().contains(t)) return true;
  if (std::binary_search(f->aux_indices.begin(), f->aux_indices.end(), t)) return true;
  return LiteralOwner(p, item).has_value();
}

std::vector<std::size_t> EligiblePositions(const PromptSpec& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i <= p.context.size(); ++i) {
    if (i > 0 && i < p.context.size()) {
      auto a = LiteralOwner(p, p.context[i - 1]);
      auto b = LiteralOwner(p, p.context[i]);
      if (a && b && *a == *b) continue;
    }
    out.push_back(i);
  }
  return out;
}

bool IsPunctLiteral(const ContextItem& c) { return !c.is_blank() && IsPunctuation(c.text); }

// Removes a comma stranded at `pos` by a deletion.
void DropOrphanComma(std::vector<ContextItem>& ctx, std::size_t pos) {
  auto is_comma = [&](std::size_t i) {
    return i < ctx.size() && !ctx[i].is_blank() && ctx[i].text == ",";
  };
  if (is_comma(pos) && (pos == 0 || IsPunctLiteral(ctx[pos - 1]))) {
    ctx.erase(ctx.begin() + pos);
  } else if (pos > 0 && is_comma(pos - 1) &&
             (pos == ctx.size() || IsPunctLiteral(ctx[pos]))) {
    ctx.erase(ctx.begin() + pos - 1);
  }
}

ArgCode& ArgAt(PromptSpec& p, std::size_t i) { return std::get<ArgCode>(p.header[i]); }

std::size_t RequireCode(const PromptSpec& p, const RoleLabel& role, OpKind kind) {
  auto idx = p.FindCode(role);
  if (!idx)
    throw UnknownRoleError(std::string(OpName(kind)) + ": role " + role.name() +
                           " not in the header");
  return *idx;
}

void InsertCode(PromptSpec& p, ArgCode code) {
  const auto kind = code.role.kind();
  std::size_t at = p.header.size();
  if (kind == RoleLabel::Kind::kAgent || kind == RoleLabel::Kind::kPatient) {
    at = 1;
    for (std::size_t i = 1; i < p.header.size(); ++i) {
      const auto* a = std::get_if<ArgCode>(&p.header[i]);
      if (!a) continue;
      auto k = a->role.kind();
      if (k == RoleLabel::Kind::kAgent ||
          (kind == RoleLabel::Kind::kPatient && k == RoleLabel::Kind::kPatient))
        at = i + 1;
    }
  }
  p.header.insert(p.header.begin() + at, std::move(code));
}

void MoveItem(std::vector<ContextItem>& ctx, std::size_t from, std::size_t to) {
  ContextItem item = ctx[from];
  ctx.erase(ctx.begin() + from);
  ctx.insert(ctx.begin() + to, std::move(item));
}

void ApplyOp(PromptSpec& p, const std::optional<RoleLabel>& role, const PerturbOp& op,
             std::uint64_t seed) {
  switch (op.kind) {
    case OpKind::kChangeVTense:
      p.verb()->tense = *op.tense;
      return;
    case OpKind::kChangeVVoice:
      p.verb()->voice = *op.voice;
      return;
    case OpKind::kChangeVLemma:
      p.verb()->lemma = op.text;
      return;
    case OpKind::kSwapCore: {
      std::size_t a = RequireCode(p, RoleLabel::Kind::kAgent, op.kind);
      std::size_t b = RequireCode(p, RoleLabel::Kind::kPatient, op.kind);
      ArgCode& x = ArgAt(p, a);
      ArgCode& y = ArgAt(p, b);
      std::swap(x.content, y.content);
      std::swap(x.spec, y.spec);
      return;
    }
    case OpKind::kChangeContent: {
      auto idx = p.FindCode(*role);
      if (idx) {
        ArgCode& a = ArgAt(p, *idx);
        ArgCode fresh = MakeArgCode(a.role, op.text, Specificity::kComplete);
        a.content = fresh.content;
        a.spec = fresh.spec;
        return;
      }
      ArgCode code = MakeArgCode(*role, op.text, Specificity::kComplete);
      const auto eligible = EligiblePositions(p);
      Rng rng(seed);
      const std::size_t at = rng.Pick(eligible);
      // Slot ids are renumbered afterwards; any unused id works here.
      int fresh = 0;
      for (const auto& c : p.context)
        if (c.is_blank()) fresh = std::max(fresh, c.slot + 1);
      p.context.insert(p.context.begin() + at, ContextItem::Blank(fresh));
      code.slot = fresh;
      InsertCode(p, std::move(code));
      return;
    }
    case OpKind::kChangeSpec: {
      ArgCode& a = ArgAt(p, RequireCode(p, *role, op.kind));
      if (a.is_any())
        throw ContractViolation("CHANGE_SPEC on " + a.role.name() + " with '*' content");
      a.spec = op.spec;
      return;
    }
    case OpKind::kDelete: {
      if (auto idx = p.FindCode(*role)) {
        std::optional<int> slot = ArgAt(p, *idx).slot;
        p.header.erase(p.header.begin() + *idx);
        if (slot) {
          if (auto pos = p.BlankPosition(*slot)) {
            p.context.erase(p.context.begin() + *pos);
            DropOrphanComma(p.context, *pos);
          }
        }
        return;
      }
      const PredicateFrame* f = SourceFrame(p);
      std::optional<std::size_t> arg;
      if (f) {
        for (std::size_t i = 0; i < f->args.size(); ++i)
          if (f->args[i].role == *role) {
            arg = i;
            break;
          }
      }
      if (!arg)
        throw UnknownRoleError("DELETE: role " + role->name() + " not in the prompt");
      std::optional<std::size_t> first;
      for (std::size_t i = 0; i < p.context.size();) {
        if (LiteralOwner(p, p.context[i]) == arg) {
          if (!first) first = i;
          p.context.erase(p.context.begin() + i);
        } else {
          ++i;
        }
      }
      if (first) DropOrphanComma(p.context, *first);
      return;
    }
    case OpKind::kMove: {
      const ArgCode& a = ArgAt(p, RequireCode(p, *role, op.kind));
      if (!a.slot) throw ContractViolation("MOVE: " + a.role.name() + " has no blank");
      std::size_t from = *p.BlankPosition(*a.slot);
      ContextItem item = p.context[from];
      p.context.erase(p.context.begin() + from);
      // An explicit position indexes the context as it stands; only the
      // default move tidies a comma left stranded.
      if (!op.position) DropOrphanComma(p.context, from);
      std::size_t to = p.context.size();
      if (op.position) {
        if (*op.position < 0 || static_cast<std::size_t>(*op.position) > p.context.size())
          throw RangeError("MOVE position " + std::to_string(*op.position) +
                           " out of range");
        to = *op.position;
      } else {
        while (to > 0 && IsPunctLiteral(p.context[to - 1])) --to;
      }
      p.context.insert(p.context.begin() + to, std::move(item));
      return;
    }
    case OpKind::kChangeIdx: {
      const auto [from, to] = *op.range;
      const int n = static_cast<int>(p.context.size());
      if (from < 0 || from >= n || to < 0 || to >= n)
        throw RangeError("CHANGE_IDX(" + std::to_string(from) + ":" + std::to_string(to) +
                         ") out of range for " + std::to_string(n) + " context items");
      MoveItem(p.context, from, to);
      return;
    }
    case OpKind::kContextDeleteText: {
      if (op.range) {
        const auto [b, e] = *op.range;
        if (b < 0 || b > e || e > static_cast<int>(p.context.size()))
          throw RangeError("CONTEXT_DELETE_TEXT(" + std::to_string(b) + ":" +
                           std::to_string(e) + ") out of range");
        std::vector<ContextItem> kept;
        for (int i = 0; i < static_cast<int>(p.context.size()); ++i)
          if (i < b || i >= e || p.context[i].is_blank()) kept.push_back(p.context[i]);
        p.context = std::move(kept);
        return;
      }
      if (!SourceFrame(p))
        throw ContractViolation(
            "CONTEXT_DELETE_TEXT without a range needs a compiled prompt");
      std::vector<ContextItem> kept;
      for (const auto& c : p.context)
        if (c.is_blank() || InFrame(p, c)) kept.push_back(c);
      p.context = std::move(kept);
      return;
    }
  }
}

}  // namespace

std::string_view OpName(OpKind kind) {
  switch (kind) {
    case OpKind::kChangeVTense:
      return "CHANGE_VTENSE";
    case OpKind::kChangeVVoice:
      return "CHANGE_VVOICE";
    case OpKind::kChangeVLemma:
      return "CHANGE_VLEMMA";
    case OpKind::kSwapCore:
      return "SWAP_CORE";
    case OpKind::kChangeIdx:
      return "CHANGE_IDX";
    case OpKind::kMove:
      return "MOVE";
    case OpKind::kChangeContent:
      return "CHANGE_CONTENT";
    case OpKind::kChangeSpec:
      return "CHANGE_SPEC";
    case OpKind::kDelete:
      return "DELETE";
    case OpKind::kContextDeleteText:
      return "CONTEXT_DELETE_TEXT";
  }
  return "";
}

bool IsRoleScoped(OpKind kind) {
  return kind == OpKind::kChangeContent || kind == OpKind::kChangeSpec ||
         kind == OpKind::kDelete || kind == OpKind::kMove;
}

OpProgram ParseProgram(std::string_view text) { return ProgramParser(text).Parse(); }

std::string RenderProgram(const OpProgram& program) {
  std::string out;
  for (std::size_t c = 0; c < program.clauses.size(); ++c) {
    const Clause& clause = program.clauses[c];
    if (c > 0) out += ';';
    if (clause.role) out += clause.role->name() + ":";
    for (std::size_t i = 0; i < clause.ops.size(); ++i) {
      if (i > 0) out += ',';
      out += RenderOp(clause.ops[i]);
    }
  }
  return out;
}

PromptSpec Apply(const PromptSpec& prompt, const OpProgram& program,
                 const ApplyOptions& options) {
  PromptSpec out = prompt;
  if (!out.verb()) throw ContractViolation("prompt has no verb code");
  for (std::size_t c = 0; c < program.clauses.size(); ++c) {
    const Clause& clause = program.clauses[c];
    for (std::size_t i = 0; i < clause.ops.size(); ++i) {
      ApplyOp(out, clause.role, clause.ops[i],
              DeriveSeed(options.seed, {TagHash("apply"), c, i}));
      RenumberBlanks(out);
    }
  }
  ValidatePrompt(out);
  return out;
}

ProgramFootprint Footprint(const OpProgram& program) {
  ProgramFootprint fp;
  auto add = [&](const RoleLabel& r) {
    if (std::find(fp.roles.begin(), fp.roles.end(), r) == fp.roles.end())
      fp.roles.push_back(r);
  };
  for (const Clause& clause : program.clauses) {
    for (const PerturbOp& op : clause.ops) {
      switch (op.kind) {
        case OpKind::kChangeVTense:
        case OpKind::kChangeVVoice:
        case OpKind::kChangeVLemma:
          fp.verb = true;
          break;
        case OpKind::kSwapCore:
          add(RoleLabel::Kind::kAgent);
          add(RoleLabel::Kind::kPatient);
          break;
        default:
          if (clause.role) add(*clause.role);
      }
    }
  }
  return fp;
}

}  // namespace srlgen
