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

#include "srlgen/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "srlgen/morphology.h"
#include "srlgen/text.h"

namespace srlgen {

namespace {

using Table = std::vector<std::vector<int>>;

// D[i][j] = edit distance between a[:i] and b[:j].
Table Forward(std::span<const std::string> a, std::span<const std::string> b) {
  const std::size_t n = a.size(), m = b.size();
  Table d(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      int sub = d[i - 1][j - 1] + (EqualsFolded(a[i - 1], b[j - 1]) ? 0 : 1);
      d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  return d;
}

// B[i][j] = edit distance between a[i:] and b[j:].
Table Backward(std::span<const std::string> a, std::span<const std::string> b) {
  const std::size_t n = a.size(), m = b.size();
  Table d(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][m] = static_cast<int>(n - i);
  for (std::size_t j = 0; j <= m; ++j) d[n][j] = static_cast<int>(m - j);
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;) {
      int sub = d[i + 1][j + 1] + (EqualsFolded(a[i], b[j]) ? 0 : 1);
      d[i][j] = std::min({sub, d[i + 1][j] + 1, d[i][j + 1] + 1});
    }
  return d;
}

struct Observed {
  std::vector<std::pair<std::string, std::vector<std::string>>> args;
  std::optional<std::vector<std::string>> verb_words;
  std::optional<VerbFeatures> verb_features;
};

bool MatchesConjugation(const std::vector<std::string>& words, const VerbCode& code) {
  for (bool plural : {false, true}) {
    auto expect = ConjugateVerb(code.lemma, code.voice, code.tense, plural);
    if (expect.size() == words.size() &&
        std::equal(expect.begin(), expect.end(), words.begin(),
                   [](const std::string& x, const std::string& y) { return EqualsFolded(x, y); }))
      return true;
  }
  return false;
}

std::size_t Overlap(const std::vector<std::string>& keyword,
                    const std::vector<std::string>& span) {
  std::size_t n = 0;
  for (const auto& k : keyword)
    for (const auto& s : span)
      if (EqualsFolded(k, s)) {
        ++n;
        break;
      }
  return n;
}

ControllabilityReport Check(const PromptSpec& prompt, const Observed& obs) {
  ControllabilityReport report;
  const VerbCode* code = prompt.verb();
  if (code && obs.verb_features) {
    const VerbFeatures& f = *obs.verb_features;
    const bool exact = obs.verb_words && MatchesConjugation(*obs.verb_words, *code);
    report.verb.lemma_ok = EqualsFolded(f.lemma, code->lemma);
    // Forms like "cut"/"read" are ambiguous between tenses; an exact
    // conjugation of the coded features is accepted as compliant.
    report.verb.tense_ok = f.tense == code->tense || exact;
    report.verb.voice_ok = f.voice == code->voice || exact;
  }
  std::vector<bool> used(obs.args.size(), false);
  for (const auto& c : prompt.header) {
    const auto* a = std::get_if<ArgCode>(&c);
    if (!a) continue;
    ArgCheck check;
    check.role = a->role.name();
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < obs.args.size(); ++i)
      if (obs.args[i].first == check.role) cands.push_back(i);
    check.ambiguous = cands.size() > 1;
    std::vector<std::size_t> fresh;
    for (std::size_t i : cands)
      if (!used[i]) fresh.push_back(i);
    if (!fresh.empty()) cands = fresh;
    if (!cands.empty()) {
      const std::vector<std::string> kw = SplitTokens(a->content);
      std::size_t best = cands[0];
      for (std::size_t i : cands)
        if (Overlap(kw, obs.args[i].second) > Overlap(kw, obs.args[best].second)) best = i;
      used[best] = true;
      const auto& span = obs.args[best].second;
      check.role_ok = true;
      check.matched = JoinTokens(span);
      if (a->is_any()) {
        check.content_ok = true;
        check.spec_ok = true;
      } else {
        check.content_ok = IsFoldedSubsequence(kw, span);
        check.spec_ok = check.content_ok && ClassifySpecificity(kw, span) == a->spec;
      }
    }
    report.per_arg.push_back(std::move(check));
  }
  return report;
}

}  // namespace

std::vector<bool> ChangedTokens(std::span<const std::string> a,
                                std::span<const std::string> b) {
  const Table f = Forward(a, b);
  const Table g = Backward(a, b);
  const int total = f[a.size()][b.size()];
  std::vector<bool> changed(a.size(), true);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (EqualsFolded(a[i], b[j]) && f[i][j] + g[i + 1][j + 1] == total) {
        changed[i] = false;
        break;
      }
  return changed;
}

bool SpanChanged(std::span<const std::string> original_span,
                 std::span<const std::string> aligned_edited) {
  if (original_span.empty()) throw ContractViolation("empty span");
  const auto changed = ChangedTokens(original_span, aligned_edited);
  const auto n = std::count(changed.begin(), changed.end(), true);
  return static_cast<double>(n) / static_cast<double>(original_span.size()) >=
         kSpanChangedThreshold;
}

ExpectedChange ExpectedSpans(const SrlSentence& original, int frame_idx,
                             const OpProgram& program) {
  const PredicateFrame& frame = original.frames.at(frame_idx);
  const ProgramFootprint fp = Footprint(program);
  ExpectedChange out;
  out.include_verb = fp.verb;
  for (const RoleLabel& role : fp.roles)
    if (auto idx = FindArg(frame, {role, 0})) out.spans.push_back(frame.args[*idx].span());
  if (fp.verb) out.spans.push_back({frame.verb_index, frame.verb_index + 1});
  return out;
}

ClosenessReport Closeness(const SrlSentence& original, int frame_idx,
                          std::string_view edited, const ExpectedChange& expected) {
  const PredicateFrame& frame = original.frames.at(frame_idx);
  const std::vector<std::string> a = original.words();
  const std::vector<std::string> b = SplitTokens(edited);
  const std::vector<bool> changed = ChangedTokens(a, b);

  ClosenessReport r;
  auto add = [&](Span sp, std::string label) {
    SpanReport s;
    s.span = sp;
    s.label = std::move(label);
    s.weight = sp.size();
    s.expected = std::find(expected.spans.begin(), expected.spans.end(), sp) !=
                 expected.spans.end();
    int n = 0;
    for (int i = sp.start; i < sp.end; ++i) n += changed[i] ? 1 : 0;
    s.changed = static_cast<double>(n) / sp.size() >= kSpanChangedThreshold;
    r.per_span.push_back(std::move(s));
  };
  for (const auto& arg : frame.args) add(arg.span(), arg.role.name());
  if (expected.include_verb) add({frame.verb_index, frame.verb_index + 1}, "VERB");

  double wc = 0, we = 0, both = 0;
  for (const auto& s : r.per_span) {
    if (s.changed) wc += s.weight;
    if (s.expected) we += s.weight;
    if (s.changed && s.expected) both += s.weight;
  }
  if (wc == 0 && we == 0) {
    r.precision = r.recall = r.f1 = 1.0;
    return r;
  }
  r.precision = wc > 0 ? both / wc : 0.0;
  r.recall = we > 0 ? both / we : 0.0;
  r.f1 = r.precision + r.recall > 0
             ? 2 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

bool ControllabilityReport::all_ok() const {
  if (!verb.lemma_ok || !verb.tense_ok || !verb.voice_ok) return false;
  return std::all_of(per_arg.begin(), per_arg.end(), [](const ArgCheck& a) {
    return a.role_ok && a.content_ok && a.spec_ok;
  });
}

ControllabilityReport CycleConsistency(const PromptSpec& prompt,
                                       const TaggedOutput& observed) {
  Observed obs;
  for (const auto& seg : observed.segments) {
    if (!seg.label) continue;
    std::vector<std::string> words = SplitTokens(seg.text);
    if (*seg.label == "VERB") {
      if (!obs.verb_words && !words.empty()) obs.verb_words = words;
      continue;
    }
    obs.args.emplace_back(*seg.label, std::move(words));
  }
  if (obs.verb_words) {
    std::optional<std::string_view> hint;
    if (prompt.verb()) hint = prompt.verb()->lemma;
    obs.verb_features = AnalyzeVerbGroup(*obs.verb_words, hint);
  }
  return Check(prompt, obs);
}

ControllabilityReport CycleConsistency(const PromptSpec& prompt,
                                       const SrlSentence& observed) {
  Observed obs;
  const PredicateFrame* frame = nullptr;
  for (const auto& f : observed.frames) {
    if (prompt.verb() && EqualsFolded(f.lemma, prompt.verb()->lemma)) {
      frame = &f;
      break;
    }
  }
  if (!frame && !observed.frames.empty()) frame = &observed.frames[0];
  if (frame) {
    for (const auto& a : frame->args)
      obs.args.emplace_back(a.role.name(), observed.words(a.span()));
    obs.verb_words = observed.words(frame->verb_group());
    obs.verb_features = VerbFeatures{frame->voice, frame->tense, frame->lemma};
  }
  return Check(prompt, obs);
}

FluencyReport FluencyRatio(double original_loss, double edited_loss) {
  if (!(original_loss > 0) || !(edited_loss > 0))
    throw ContractViolation("losses must be positive");
  return {edited_loss / original_loss};
}

std::size_t KeepCount(std::size_t n, double keep_fraction) {
  const double x = keep_fraction * static_cast<double>(n);
  const double k = std::ceil(x - 1e-9 * std::max(1.0, x));
  return std::min(n, static_cast<std::size_t>(std::max(0.0, k)));
}

std::vector<std::size_t> PerplexityFilterIndices(std::span<const double> scores,
                                                 double keep_fraction) {
  if (!(keep_fraction > 0.0) || keep_fraction > 1.0)
    throw ContractViolation("keep fraction must be in (0, 1]");
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto key = [&](std::size_t i) {
    return std::isnan(scores[i]) ? std::numeric_limits<double>::infinity() : scores[i];
  };
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
  idx.resize(KeepCount(scores.size(), keep_fraction));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::size_t SelectBestIndex(std::span<const double> scores) {
  if (scores.empty()) throw ContractViolation("no candidates");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] < scores[best]) best = i;
  return best;
}

}  // namespace srlgen
