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

#include "srlgen/train_data.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "srlgen/error.h"
#include "srlgen/rng.h"
#include "srlgen/text.h"

namespace srlgen {

namespace {

using nlohmann::json;

RoleLabel RoleFromName(const std::string& name) {
  auto role = RoleLabel::FromName(name);
  if (!role) throw SchemaError("unknown role \"" + name + "\"");
  return *role;
}

Specificity SpecFromName(const std::string& name) {
  auto spec = ParseSpecificity(name);
  if (!spec) throw SchemaError("unknown specificity \"" + name + "\"");
  return *spec;
}

bool HasMeta(std::string_view s) { return s.find_first_of("[]|") != std::string_view::npos; }

TrainingExample Negative(const PositiveSample& pos, const PromptSpec& prompt,
                         std::string_view strategy, bool relabel_target) {
  ValidatePrompt(prompt);
  TrainingExample ex;
  ex.input = Serialize(prompt);
  ex.target = relabel_target ? BuildTarget(*prompt.source, prompt) : pos.example.target;
  ex.reward = -1;
  ex.provenance = pos.example.provenance;
  ex.provenance.strategy = std::string(strategy);
  ex.provenance.skipped.clear();
  return ex;
}

// AGENT<->PATIENT, every adjunct to a different adjunct, voice flipped and
// tense changed. Always applicable: every prompt has a verb code.
PromptSpec SwapControls(const PromptSpec& in, Rng& rng) {
  PromptSpec p = in;
  const auto& adjuncts = RoleLabel::Adjuncts();
  for (auto& code : p.header) {
    if (auto* v = std::get_if<VerbCode>(&code)) {
      v->voice = v->voice == Voice::kActive ? Voice::kPassive : Voice::kActive;
      std::vector<Tense> others;
      for (Tense t : {Tense::kPast, Tense::kPresent, Tense::kFuture})
        if (t != v->tense) others.push_back(t);
      v->tense = rng.Pick(others);
      continue;
    }
    auto& a = std::get<ArgCode>(code);
    if (a.role.kind() == RoleLabel::Kind::kAgent) {
      a.role = RoleLabel::Kind::kPatient;
    } else if (a.role.kind() == RoleLabel::Kind::kPatient) {
      a.role = RoleLabel::Kind::kAgent;
    } else if (std::find(adjuncts.begin(), adjuncts.end(), a.role) != adjuncts.end()) {
      std::vector<RoleLabel> others;
      for (const auto& r : adjuncts)
        if (r != a.role) others.push_back(r);
      a.role = rng.Pick(others);
    }
  }
  return p;
}

std::optional<PromptSpec> ResampleContent(const PromptSpec& in, const KeywordTable& table,
                                          Rng& rng) {
  PromptSpec p = in;
  bool changed = false;
  for (auto& code : p.header) {
    auto* a = std::get_if<ArgCode>(&code);
    if (!a || a->is_any()) continue;
    const KeywordTable::Entry* entry = table.Find(a->role, *a->spec);
    if (!entry) continue;
    std::vector<std::string> options;
    for (const auto& [content, count] : *entry)
      if (!EqualsFolded(content, a->content) && !HasMeta(content)) options.push_back(content);
    if (options.empty()) continue;
    a->content = rng.Pick(options);
    changed = true;
  }
  if (!changed) return std::nullopt;
  VerbCode* verb = p.verb();
  std::vector<std::string> lemmas;
  for (const auto& [lemma, count] : table.verb_lemmas())
    if (!EqualsFolded(lemma, verb->lemma) && !HasMeta(lemma)) lemmas.push_back(lemma);
  if (!lemmas.empty()) verb->lemma = rng.Pick(lemmas);
  return p;
}

std::optional<PromptSpec> ResampleSpec(const PromptSpec& in, Rng& rng) {
  PromptSpec p = in;
  bool changed = false;
  for (auto& code : p.header) {
    auto* a = std::get_if<ArgCode>(&code);
    if (!a || a->is_any()) continue;
    std::vector<Specificity> others;
    for (Specificity s : {Specificity::kSparse, Specificity::kPartial, Specificity::kComplete})
      if (s != *a->spec) others.push_back(s);
    a->spec = rng.Pick(others);
    changed = true;
  }
  if (!changed) return std::nullopt;
  return p;
}

}  // namespace

json ToJson(const TrainingExample& e) {
  return {{"input", e.input},
          {"target", e.target},
          {"reward", e.reward},
          {"provenance",
           {{"sentence_id", e.provenance.sentence_id},
            {"frame_idx", e.provenance.frame_idx},
            {"strategy", e.provenance.strategy},
            {"skipped", e.provenance.skipped}}}};
}

TrainingExample TrainingExampleFromJson(const json& j) {
  try {
    TrainingExample e;
    e.input = j.at("input").get<std::string>();
    e.target = j.at("target").get<std::string>();
    e.reward = j.at("reward").get<int>();
    if (e.reward != 1 && e.reward != -1) throw SchemaError("reward must be +1 or -1");
    const json& p = j.at("provenance");
    e.provenance.sentence_id = p.at("sentence_id").get<std::string>();
    e.provenance.frame_idx = p.at("frame_idx").get<int>();
    e.provenance.strategy = p.at("strategy").get<std::string>();
    if (p.contains("skipped"))
      e.provenance.skipped = p.at("skipped").get<std::vector<std::string>>();
    return e;
  } catch (const json::exception& ex) {
    throw SchemaError(std::string("training example: ") + ex.what());
  }
}

KeywordTable KeywordTable::Build(const std::vector<SrlSentence>& corpus, std::uint64_t seed) {
  std::map<Key, std::map<std::string, std::size_t>> counts;
  std::map<std::string, std::size_t> lemmas;
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const SrlSentence& sentence = corpus[s];
    for (std::size_t f = 0; f < sentence.frames.size(); ++f) {
      if (!sentence.frames[f].lemma.empty()) ++lemmas[CaseFold(sentence.frames[f].lemma)];
      const auto& args = sentence.frames[f].args;
      for (std::size_t a = 0; a < args.size(); ++a) {
        const std::uint64_t kseed = DeriveSeed(seed, {TagHash("keyword-table"), s, f, a});
        for (const auto& c :
             ExtractKeywordCandidates(args[a], sentence, kseed, kTrainingKeywordOptions)) {
          if (c.content == kAnyContent) continue;
          ++counts[{args[a].role, c.spec}][c.content];
        }
      }
    }
  }
  // std::map iterates in lexicographic order; the stable sort keeps it for ties.
  auto top = [](const std::map<std::string, std::size_t>& m) {
    Entry e(m.begin(), m.end());
    std::stable_sort(e.begin(), e.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    if (e.size() > kTopK) e.resize(kTopK);
    return e;
  };
  KeywordTable table;
  for (auto& [key, m] : counts) table.entries_[key] = top(m);
  table.verb_lemmas_ = top(lemmas);
  return table;
}

const KeywordTable::Entry* KeywordTable::Find(const RoleLabel& role, Specificity spec) const {
  auto it = entries_.find({role, spec});
  return it == entries_.end() ? nullptr : &it->second;
}

json KeywordTable::ToJson() const {
  json list = json::array();
  for (const auto& [key, entry] : entries_) {
    json items = json::array();
    for (const auto& [content, count] : entry) items.push_back({content, count});
    list.push_back({{"role", key.first.name()},
                    {"spec", std::string(ToString(key.second))},
                    {"items", std::move(items)}});
  }
  json lemmas = json::array();
  for (const auto& [lemma, count] : verb_lemmas_) lemmas.push_back({lemma, count});
  return {{"top_k", kTopK}, {"entries", std::move(list)}, {"verb_lemmas", std::move(lemmas)}};
}

KeywordTable KeywordTable::FromJson(const json& j) {
  try {
    KeywordTable t;
    for (const auto& e : j.at("entries")) {
      Key key{RoleFromName(e.at("role").get<std::string>()),
              SpecFromName(e.at("spec").get<std::string>())};
      Entry entry;
      for (const auto& item : e.at("items"))
        entry.emplace_back(item.at(0).get<std::string>(), item.at(1).get<std::size_t>());
      if (entry.size() > kTopK) throw SchemaError("keyword table entry longer than top-k");
      t.entries_[key] = std::move(entry);
    }
    if (j.contains("verb_lemmas"))
      for (const auto& item : j.at("verb_lemmas"))
        t.verb_lemmas_.emplace_back(item.at(0).get<std::string>(), item.at(1).get<std::size_t>());
    return t;
  } catch (const json::exception& ex) {
    throw SchemaError(std::string("keyword table: ") + ex.what());
  }
}

CompileRequest SamplePositiveRequest(const SrlSentence& sentence, int frame_idx,
                                     std::uint64_t seed) {
  if (frame_idx < 0 || frame_idx >= static_cast<int>(sentence.frames.size()))
    throw ContractViolation("frame index " + std::to_string(frame_idx) + " out of range");
  const PredicateFrame& frame = sentence.frames[frame_idx];
  Rng rng(DeriveSeed(seed, {TagHash("positive")}));
  const std::size_t n = frame.args.size();

  std::size_t k = n;
  if (!rng.Coin() && n > 0) {
    const double u = 1.0 - rng.Unit();  // (0, 1]
    k = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(u * n)), 1, n);
  }
  const std::vector<std::size_t> masked = rng.SampleIndices(n, k);
  const auto drawn = static_cast<std::size_t>(rng.Below(10));

  CompileRequest req;
  req.frame_idx = frame_idx;
  req.n_extra_blanks = static_cast<int>(std::max(drawn, k) - k);
  req.seed = rng.Next();
  for (std::size_t i : masked) {
    const RoleOccurrence occ = OccurrenceOf(frame, i);
    const auto cands =
        ExtractKeywordCandidates(frame.args[i], sentence, rng.Next(), kTrainingKeywordOptions);
    req.mask.push_back(occ);
    req.keywords[occ] = rng.Pick(cands);
  }
  return req;
}

PositiveSample MakePositive(std::shared_ptr<const SrlSentence> sentence,
                            const CompileRequest& request) {
  PositiveSample out;
  out.prompt = Compile(sentence, request);
  out.example.input = Serialize(out.prompt);
  out.example.target = BuildTarget(*sentence, out.prompt);
  out.example.reward = 1;
  out.example.provenance = {sentence->id, request.frame_idx, std::string(kStrategyPositive), {}};
  return out;
}

PositiveSample SamplePositive(std::shared_ptr<const SrlSentence> sentence, int frame_idx,
                              std::uint64_t seed) {
  return MakePositive(sentence, SamplePositiveRequest(*sentence, frame_idx, seed));
}

PositiveSample SamplePositive(const SrlSentence& sentence, int frame_idx, std::uint64_t seed) {
  return SamplePositive(std::make_shared<const SrlSentence>(sentence), frame_idx, seed);
}

NegativeSet GenNegatives(const PositiveSample& positive, const KeywordTable& table,
                         std::uint64_t seed) {
  if (!positive.prompt.source) throw ContractViolation("positive prompt has no source sentence");
  NegativeSet out;
  {
    Rng rng(DeriveSeed(seed, {TagHash(kStrategySwapControls)}));
    out.examples.push_back(
        Negative(positive, SwapControls(positive.prompt, rng), kStrategySwapControls, true));
  }
  {
    Rng rng(DeriveSeed(seed, {TagHash(kStrategyResampleContent)}));
    if (auto p = ResampleContent(positive.prompt, table, rng))
      out.examples.push_back(Negative(positive, *p, kStrategyResampleContent, false));
    else
      out.skipped.emplace_back(kStrategyResampleContent);
  }
  {
    Rng rng(DeriveSeed(seed, {TagHash(kStrategyResampleSpec)}));
    if (auto p = ResampleSpec(positive.prompt, rng))
      out.examples.push_back(Negative(positive, *p, kStrategyResampleSpec, false));
    else
      out.skipped.emplace_back(kStrategyResampleSpec);
  }
  return out;
}

json DatasetSummary::ToJson() const {
  json fails = json::array();
  for (const auto& f : failures)
    fails.push_back({{"record", f.record}, {"frame_idx", f.frame_idx}, {"message", f.message}});
  return {{"sentences", sentences}, {"frames", frames},     {"positives", positives},
          {"negatives", negatives}, {"skipped", skipped},   {"failures", std::move(fails)}};
}

namespace {

struct SentenceResult {
  std::vector<TrainingExample> examples;
  std::vector<std::string> skipped;
  std::vector<DatasetIssue> failures;
};

SentenceResult Generate(const SrlSentence& sentence, std::size_t record,
                        const KeywordTable& table, std::uint64_t seed) {
  SentenceResult r;
  auto shared = std::make_shared<const SrlSentence>(sentence);
  for (std::size_t f = 0; f < sentence.frames.size(); ++f) {
    const std::uint64_t fseed = DeriveSeed(seed, {record, f});
    try {
      PositiveSample pos = SamplePositive(shared, static_cast<int>(f), fseed);
      NegativeSet neg = GenNegatives(pos, table, DeriveSeed(fseed, {TagHash("negatives")}));
      pos.example.provenance.skipped = neg.skipped;
      r.examples.push_back(std::move(pos.example));
      for (auto& e : neg.examples) r.examples.push_back(std::move(e));
      for (auto& s : neg.skipped) r.skipped.push_back(std::move(s));
    } catch (const Error& e) {
      r.failures.push_back({record, static_cast<int>(f), e.what()});
    }
  }
  return r;
}

}  // namespace

DatasetSummary GenDataset(const std::vector<SrlSentence>& corpus, const KeywordTable& table,
                          std::uint64_t seed, int jobs,
                          const std::function<void(const TrainingExample&)>& sink) {
  DatasetSummary summary;
  summary.sentences = corpus.size();
  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  const std::size_t batch = std::max<std::size_t>(64, workers * 16);
  for (std::size_t begin = 0; begin < corpus.size(); begin += batch) {
    const std::size_t end = std::min(corpus.size(), begin + batch);
    std::vector<SentenceResult> results(end - begin);
    std::atomic<std::size_t> next{begin};
    auto work = [&] {
      for (std::size_t i = next++; i < end; i = next++)
        results[i - begin] = Generate(corpus[i], i, table, seed);
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < std::min(workers, end - begin); ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    for (std::size_t i = begin; i < end; ++i) {
      SentenceResult& r = results[i - begin];
      summary.frames += corpus[i].frames.size();
      for (const auto& e : r.examples) {
        (e.reward > 0 ? summary.positives : summary.negatives) += 1;
        sink(e);
      }
      for (const auto& s : r.skipped) ++summary.skipped[s];
      for (auto& f : r.failures) summary.failures.push_back(std::move(f));
    }
  }
  return summary;
}

}  // namespace srlgen
