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

#include "srlgen/cli.h"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "srlgen/clients.h"
#include "srlgen/corpus.h"
#include "srlgen/error.h"
#include "srlgen/metrics.h"
#include "srlgen/perturb.h"
#include "srlgen/prompt.h"
#include "srlgen/recipes.h"
#include "srlgen/rng.h"
#include "srlgen/text.h"
#include "srlgen/train_data.h"

namespace srlgen {

namespace {

using nlohmann::json;

// Bad flags, unreadable inputs, invalid configuration: exit 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

std::string Dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

struct CommonOptions {
  bool mock = false;
  int jobs = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string config;
  std::string gen_url, srl_url, score_url;
  std::string out;
};

struct Line {
  std::size_t number = 0;  // 1-based
  std::string text;
};

std::vector<Line> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::vector<Line> lines;
  std::string text;
  for (std::size_t n = 1; std::getline(in, text); ++n) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back({n, std::move(text)});
  }
  return lines;
}

// Collects the per-record outcome of a run.
struct Summary {
  json failures = json::array();
  json skipped = json::array();
  std::size_t records = 0;
  std::size_t emitted = 0;

  void Fail(json where, const std::string& message) {
    where["error"] = message;
    failures.push_back(std::move(where));
  }
};

struct LoadedCorpus {
  std::vector<std::shared_ptr<const SrlSentence>> sentences;
  std::vector<std::size_t> lines;  // source line of each sentence
};

// Undecodable lines are reported and skipped; the rest of the file is used.
LoadedCorpus LoadCorpus(const std::string& path, Summary& summary) {
  LoadedCorpus c;
  for (const Line& line : ReadLines(path)) {
    ++summary.records;
    try {
      json record = json::parse(line.text);
      if (!record.is_object()) throw SchemaError("record is not a JSON object");
      std::vector<std::string> warnings;
      auto s = std::make_shared<SrlSentence>(
          SentenceFromJson(record, "line-" + std::to_string(line.number), &warnings));
      for (const auto& w : warnings)
        summary.skipped.push_back({{"line", line.number}, {"id", s->id}, {"reason", w}});
      c.sentences.push_back(std::move(s));
      c.lines.push_back(line.number);
    } catch (const json::exception& e) {
      summary.Fail({{"line", line.number}}, std::string("invalid JSON: ") + e.what());
    } catch (const Error& e) {
      summary.Fail({{"line", line.number}}, e.what());
    }
  }
  return c;
}

// Runs fn(i) for i in [0, n) on `jobs` threads. fn must not throw.
void ParallelFor(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w)
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : threads) t.join();
}

// Output of one record, merged into the stream in input order.
struct RecordResult {
  std::vector<json> lines;
  json failures = json::array();
  json skipped = json::array();
};

void Merge(std::vector<RecordResult>& results, Summary& summary, std::ostream& out) {
  for (auto& r : results) {
    for (const auto& l : r.lines) out << Dump(l) << '\n';
    summary.emitted += r.lines.size();
    for (auto& f : r.failures) summary.failures.push_back(std::move(f));
    for (auto& s : r.skipped) summary.skipped.push_back(std::move(s));
  }
}

Backends BuildBackends(const CommonOptions& o, std::ostream& err) {
  BackendConfig config;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ConfigError("cannot read config " + o.config);
    try {
      config.ApplyJson(json::parse(in));
    } catch (const json::exception& e) {
      throw ConfigError("config " + o.config + ": " + e.what());
    } catch (const SchemaError& e) {
      throw ConfigError(e.what());
    }
  }
  config.ApplyEnvironment();
  if (!o.gen_url.empty()) config.generator.url = o.gen_url;
  if (!o.srl_url.empty()) config.srl.url = o.srl_url;
  if (!o.score_url.empty()) config.scorer.url = o.score_url;
  for (const ClientConfig* c : {&config.generator, &config.srl, &config.scorer})
    if (!c->url.empty() && c->url.find("://") == std::string::npos)
      throw ConfigError("backend URL needs a scheme: " + c->url);
  return MakeBackends(config, o.mock, [&err](const std::string& w) {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    err << Dump({{"warning", w}}) << '\n';
  });
}

std::uint64_t RecordSeed(std::uint64_t seed, std::size_t record, int frame) {
  return DeriveSeed(seed, {static_cast<std::uint64_t>(record), static_cast<std::uint64_t>(frame)});
}

std::vector<int> FramesOf(const SrlSentence& s, const std::optional<int>& frame) {
  std::vector<int> out;
  if (frame) {
    if (*frame >= 0 && *frame < static_cast<int>(s.frames.size())) out.push_back(*frame);
    return out;
  }
  for (int f = 0; f < static_cast<int>(s.frames.size()); ++f) out.push_back(f);
  return out;
}

// "all", "none", or a comma-separated role list.
struct MaskSpec {
  bool all = true;
  std::set<RoleLabel> roles;
};

MaskSpec ParseMask(const std::string& text) {
  MaskSpec m;
  if (text == "all") return m;
  m.all = false;
  if (text == "none" || text.empty()) return m;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    auto role = RoleLabel::FromName(std::string(Trim(piece)));
    if (!role) throw ConfigError("unknown role in --mask: " + piece);
    m.roles.insert(*role);
  }
  return m;
}

std::vector<RoleOccurrence> MaskFor(const PredicateFrame& f, const MaskSpec& m) {
  std::vector<RoleOccurrence> out;
  for (std::size_t i = 0; i < f.args.size(); ++i)
    if (m.all || m.roles.count(f.args[i].role)) out.push_back(OccurrenceOf(f, i));
  return out;
}

struct GenerationOptions {
  int n_beams = 10;
  int max_candidates = 1;
  bool no_repeat_bigrams = true;
};

// Adds "generations" (raw backend output) and "texts" (untagged) to `record`.
void AddGenerations(Generator& gen, const GenerationOptions& g, const PromptSpec& prompt,
                    std::vector<std::string> banned, json& record) {
  GenerateRequest req;
  req.prompt = Serialize(prompt);
  req.compiled = &prompt;
  req.n_beams = g.n_beams;
  req.max_candidates = g.max_candidates;
  req.no_repeat_bigrams = g.no_repeat_bigrams;
  req.banned_phrases = std::move(banned);
  json gens = json::array(), texts = json::array();
  for (const auto& c : gen.Generate(req)) {
    gens.push_back(c);
    try {
      texts.push_back(ParseTaggedOutput(c).text());
    } catch (const ParseError&) {
      texts.push_back(c);
    }
  }
  record["generations"] = std::move(gens);
  record["texts"] = std::move(texts);
}

json Where(const SrlSentence& s, std::size_t line, std::optional<int> frame = std::nullopt) {
  json j = {{"line", line}, {"id", s.id}};
  if (frame) j["frame_idx"] = *frame;
  return j;
}

std::unique_ptr<std::ofstream> OpenOut(const std::string& path) {
  if (path.empty() || path == "-") return nullptr;
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*f) throw ConfigError("cannot write " + path);
  return f;
}

void RequireSeed(const CommonOptions& o, const std::string& sub) {
  if (!o.seed_given) throw ConfigError(sub + " requires --seed");
}

// ---- subcommands ----

struct CompileOptions {
  std::string corpus;
  std::optional<int> frame;
  std::string mask = "all";
  int extra_blanks = 0;
  bool sample = false;
};

void RunCompile(const CommonOptions& o, const CompileOptions& c, Summary& summary,
                std::ostream& out) {
  RequireSeed(o, "compile");
  if (c.extra_blanks < 0) throw ConfigError("--extra-blanks must be >= 0");
  const MaskSpec mask = ParseMask(c.mask);
  LoadedCorpus corpus = LoadCorpus(c.corpus, summary);
  std::vector<RecordResult> results(corpus.sentences.size());
  ParallelFor(corpus.sentences.size(), o.jobs, [&](std::size_t i) {
    const auto& s = corpus.sentences[i];
    for (int f : FramesOf(*s, c.frame)) {
      try {
        json rec = {{"id", s->id}, {"frame_idx", f}};
        const std::uint64_t seed = RecordSeed(o.seed, i, f);
        if (c.sample) {
          PositiveSample pos = SamplePositive(s, f, seed);
          rec["prompt"] = pos.example.input;
          rec["target"] = pos.example.target;
        } else {
          CompileRequest req;
          req.frame_idx = f;
          req.mask = MaskFor(s->frames[f], mask);
          req.n_extra_blanks = c.extra_blanks;
          req.seed = seed;
          PromptSpec p = Compile(s, req);
          rec["prompt"] = Serialize(p);
          rec["target"] = BuildTarget(*s, p);
        }
        results[i].lines.push_back(std::move(rec));
      } catch (const Error& e) {
        results[i].failures.push_back(Where(*s, corpus.lines[i], f));
        results[i].failures.back()["error"] = e.what();
      }
    }
  });
  Merge(results, summary, out);
}

struct PerturbOptions {
  std::string corpus;
  std::string ops;
  std::string ops_file;
  std::optional<int> frame;
  std::string mask = "all";
  GenerationOptions gen;
};

void RunPerturb(const CommonOptions& o, const PerturbOptions& p, const Backends& backends,
                Summary& summary, std::ostream& out) {
  if (p.ops.empty() == p.ops_file.empty())
    throw ConfigError("perturb needs exactly one of --ops and --ops-file");
  const MaskSpec mask = ParseMask(p.mask);
  LoadedCorpus corpus = LoadCorpus(p.corpus, summary);

  // One program per sentence line; a single --ops program is shared.
  std::vector<std::optional<OpProgram>> programs;
  std::vector<std::string> program_errors;
  if (!p.ops.empty()) {
    try {
      programs.assign(corpus.sentences.size(), ParseProgram(p.ops));
    } catch (const ParseError& e) {
      throw ConfigError(std::string("--ops: ") + e.what());
    }
    program_errors.assign(corpus.sentences.size(), "");
  } else {
    std::vector<Line> lines = ReadLines(p.ops_file);
    if (lines.size() != summary.records)
      throw ConfigError("--ops-file has " + std::to_string(lines.size()) +
                        " programs for " + std::to_string(summary.records) + " sentences");
    // Programs align with the non-blank corpus lines, including undecodable ones.
    std::vector<Line> corpus_lines = ReadLines(p.corpus);
    std::map<std::size_t, std::size_t> by_line;
    for (std::size_t k = 0; k < corpus_lines.size(); ++k) by_line[corpus_lines[k].number] = k;
    for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
      const Line& l = lines[by_line.at(corpus.lines[i])];
      try {
        programs.push_back(ParseProgram(l.text));
        program_errors.emplace_back();
      } catch (const ParseError& e) {
        programs.push_back(std::nullopt);
        program_errors.push_back("ops line " + std::to_string(l.number) + ": " + e.what());
      }
    }
  }

  std::vector<RecordResult> results(corpus.sentences.size());
  ParallelFor(corpus.sentences.size(), o.jobs, [&](std::size_t i) {
    const auto& s = corpus.sentences[i];
    RecordResult& r = results[i];
    if (!programs[i]) {
      r.failures.push_back(Where(*s, corpus.lines[i]));
      r.failures.back()["error"] = program_errors[i];
      return;
    }
    for (int f : FramesOf(*s, p.frame)) {
      try {
        CompileRequest req;
        req.frame_idx = f;
        req.mask = MaskFor(s->frames[f], mask);
        req.seed = RecordSeed(o.seed, i, f);
        PromptSpec base = Compile(s, req);
        PromptSpec edited;
        try {
          edited = Apply(base, *programs[i], {DeriveSeed(req.seed, {TagHash("apply")})});
        } catch (const UnknownRoleError& e) {
          json sk = Where(*s, corpus.lines[i], f);
          sk["reason"] = e.what();
          r.skipped.push_back(std::move(sk));
          continue;
        }
        json rec = {{"id", s->id},
                    {"frame_idx", f},
                    {"prompt", Serialize(base)},
                    {"program", RenderProgram(*programs[i])},
                    {"perturbed", Serialize(edited)}};
        if (backends.generator) AddGenerations(*backends.generator, p.gen, edited, {}, rec);
        r.lines.push_back(std::move(rec));
      } catch (const Error& e) {
        r.failures.push_back(Where(*s, corpus.lines[i], f));
        r.failures.back()["error"] = e.what();
      }
    }
  });
  Merge(results, summary, out);
}

struct GenDataOptions {
  std::string corpus;
  std::string table;
};

json RunGenData(const CommonOptions& o, const GenDataOptions& g, Summary& summary,
                std::ostream& out) {
  RequireSeed(o, "gen-data");
  LoadedCorpus corpus = LoadCorpus(g.corpus, summary);
  std::vector<SrlSentence> sentences;
  sentences.reserve(corpus.sentences.size());
  for (const auto& s : corpus.sentences) sentences.push_back(*s);

  KeywordTable table;
  if (!g.table.empty() && std::filesystem::exists(g.table)) {
    std::ifstream in(g.table);
    try {
      table = KeywordTable::FromJson(json::parse(in));
    } catch (const json::exception& e) {
      throw ConfigError("keyword table " + g.table + ": " + e.what());
    } catch (const Error& e) {
      throw ConfigError("keyword table " + g.table + ": " + e.what());
    }
  } else {
    table = KeywordTable::Build(sentences, o.seed);
    if (!g.table.empty()) {
      std::ofstream t(g.table, std::ios::binary | std::ios::trunc);
      if (!t) throw ConfigError("cannot write " + g.table);
      t << table.ToJson().dump(1) << '\n';
    }
  }

  DatasetSummary ds = GenDataset(sentences, table, o.seed, o.jobs,
                                 [&](const TrainingExample& ex) {
                                   out << Dump(ToJson(ex)) << '\n';
                                   ++summary.emitted;
                                 });
  for (const auto& f : ds.failures) {
    summary.Fail(Where(*corpus.sentences[f.record], corpus.lines[f.record], f.frame_idx),
                 f.message);
  }
  json j = ds.ToJson();
  j.erase("failures");
  j["negatives_skipped"] = std::move(j["skipped"]);  // "skipped" lists records
  j.erase("skipped");
  return j;
}

struct RecipeOptions {
  std::string name;
  std::string params;
  std::string corpus;
  bool best = false;
  GenerationOptions gen;
};

void RunRecipeCommand(const CommonOptions& o, const RecipeOptions& ro, const Backends& backends,
                      Summary& summary, std::ostream& out) {
  RequireSeed(o, "recipe");
  const auto names = RecipeNames();
  if (std::find(names.begin(), names.end(), ro.name) == names.end())
    throw ConfigError("unknown recipe \"" + ro.name + "\"");
  RecipeParams params;
  try {
    params = ParseRecipeParams(ro.params);
  } catch (const RecipeParameterError& e) {
    throw ConfigError(e.what());
  }
  if (ro.best && (!backends.generator || !backends.scorer))
    throw ConfigError("--best needs a generator and a scorer (or --mock)");
  LoadedCorpus corpus = LoadCorpus(ro.corpus, summary);

  std::vector<RecordResult> results(corpus.sentences.size());
  std::vector<std::string> parameter_errors(corpus.sentences.size());
  ParallelFor(corpus.sentences.size(), o.jobs, [&](std::size_t i) {
    const auto& s = corpus.sentences[i];
    RecordResult& r = results[i];
    try {
      RecipeResult rr = RunRecipe(ro.name, s, params, DeriveSeed(o.seed, {i}));
      for (const auto& why : rr.skipped) {
        json sk = Where(*s, corpus.lines[i]);
        sk["reason"] = why;
        r.skipped.push_back(std::move(sk));
      }
      std::vector<json> recs;
      std::vector<double> scores;
      for (const auto& cand : rr.candidates) {
        json rec = cand.ToJson();
        rec["id"] = s->id;
        if (backends.generator) {
          std::vector<std::string> banned;
          if (cand.metadata.contains("banned_phrases"))
            banned = cand.metadata["banned_phrases"].get<std::vector<std::string>>();
          AddGenerations(*backends.generator, ro.gen, cand.perturbed, banned, rec);
        }
        if (ro.best) {
          const auto& texts = rec["texts"];
          double best = std::numeric_limits<double>::infinity();
          for (const auto& t : texts)
            best = std::min(best, backends.scorer->Score(t.get<std::string>()).perplexity);
          rec["perplexity"] = texts.empty() ? json(nullptr) : json(best);
          scores.push_back(best);
        }
        recs.push_back(std::move(rec));
      }
      if (ro.best && !recs.empty()) {
        json chosen = std::move(recs[SelectBestIndex(scores)]);
        recs.assign(1, std::move(chosen));
      }
      r.lines = std::move(recs);
    } catch (const RecipeParameterError& e) {
      parameter_errors[i] = e.what();
    } catch (const Error& e) {
      r.failures.push_back(Where(*s, corpus.lines[i]));
      r.failures.back()["error"] = e.what();
    }
  });
  for (const auto& e : parameter_errors)
    if (!e.empty()) throw ConfigError(e);
  Merge(results, summary, out);
}

struct EvalOptions {
  std::string input;
  std::string corpus;
};

json CheckJson(const ControllabilityReport& rep) {
  json args = json::array();
  for (const auto& a : rep.per_arg) {
    json j = {{"role", a.role},
              {"role_ok", a.role_ok},
              {"content_ok", a.content_ok},
              {"spec_ok", a.spec_ok},
              {"ambiguous", a.ambiguous}};
    j["matched"] = a.matched ? json(*a.matched) : json(nullptr);
    args.push_back(std::move(j));
  }
  return {{"lemma_ok", rep.verb.lemma_ok},
          {"tense_ok", rep.verb.tense_ok},
          {"voice_ok", rep.verb.voice_ok},
          {"args", std::move(args)},
          {"all_ok", rep.all_ok()}};
}

struct EvalTotals {
  std::size_t pairs = 0;
  double f1 = 0, precision = 0, recall = 0;
  std::size_t checked = 0, all_ok = 0, lemma = 0, tense = 0, voice = 0;
  std::size_t arg_checks = 0, role = 0, content = 0, spec = 0;
  std::size_t fluency_n = 0;
  double fluency = 0;

  json ToJson() const {
    auto mean = [](double sum, std::size_t n) { return n ? json(sum / n) : json(nullptr); };
    return {{"pairs", pairs},
            {"closeness", {{"f1", mean(f1, pairs)},
                           {"precision", mean(precision, pairs)},
                           {"recall", mean(recall, pairs)}}},
            {"controllability", {{"checked", checked},
                                 {"all_ok", mean(all_ok, checked)},
                                 {"lemma", mean(lemma, checked)},
                                 {"tense", mean(tense, checked)},
                                 {"voice", mean(voice, checked)},
                                 {"role", mean(role, arg_checks)},
                                 {"content", mean(content, arg_checks)},
                                 {"specificity", mean(spec, arg_checks)}}},
            {"fluency", {{"scored", fluency_n}, {"ratio", mean(fluency, fluency_n)}}}};
  }
};

json RunEval(const CommonOptions& o, const EvalOptions& eo, const Backends& backends,
             Summary& summary, std::ostream& out) {
  std::map<std::string, std::shared_ptr<const SrlSentence>> by_id;
  if (!eo.corpus.empty()) {
    Summary corpus_summary;
    LoadedCorpus c = LoadCorpus(eo.corpus, corpus_summary);
    if (!corpus_summary.failures.empty())
      throw ConfigError("--corpus " + eo.corpus + " has undecodable records");
    for (const auto& s : c.sentences) by_id[s->id] = s;
  }
  const std::vector<Line> lines = ReadLines(eo.input);
  summary.records = lines.size();

  struct PairResult {
    std::optional<json> report;
    std::optional<json> failure;
    std::optional<ClosenessReport> closeness;
    std::optional<ControllabilityReport> control;
    std::optional<double> fluency;
  };
  std::vector<PairResult> results(lines.size());
  ParallelFor(lines.size(), o.jobs, [&](std::size_t i) {
    PairResult& r = results[i];
    json where = {{"line", lines[i].number}};
    try {
      json rec;
      try {
        rec = json::parse(lines[i].text);
      } catch (const json::exception& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
      }
      if (!rec.is_object()) throw SchemaError("record is not a JSON object");
      if (rec.contains("id")) where["id"] = rec["id"];
      std::shared_ptr<const SrlSentence> original;
      if (rec.contains("original")) {
        original = std::make_shared<SrlSentence>(SentenceFromJson(rec["original"], "original"));
      } else if (rec.contains("id") && rec["id"].is_string() &&
                 by_id.count(rec["id"].get<std::string>())) {
        original = by_id.at(rec["id"].get<std::string>());
      } else {
        throw SchemaError("no \"original\" sentence and no matching id in --corpus");
      }
      const int frame = rec.value("frame_idx", 0);
      if (frame < 0 || frame >= static_cast<int>(original->frames.size()))
        throw SchemaError("frame_idx out of range");
      if (!rec.contains("program") || !rec["program"].is_string())
        throw SchemaError("missing \"program\"");
      const OpProgram program = ParseProgram(rec["program"].get<std::string>());
      std::string edited;
      if (rec.contains("edited") && rec["edited"].is_string()) {
        edited = rec["edited"].get<std::string>();
      } else if (rec.contains("generations") && rec["generations"].is_array() &&
                 !rec["generations"].empty()) {
        edited = rec["generations"][0].get<std::string>();
      } else {
        throw SchemaError("missing \"edited\" text");
      }
      TaggedOutput tagged;
      bool has_tags = false;
      try {
        tagged = ParseTaggedOutput(edited);
        for (const auto& seg : tagged.segments) has_tags = has_tags || seg.label.has_value();
      } catch (const ParseError&) {
        tagged = TaggedOutput{{{std::nullopt, edited}}};
      }
      const std::string text = tagged.text();

      json report = {{"line", lines[i].number}, {"frame_idx", frame}, {"edited", text}};
      if (rec.contains("id")) report["id"] = rec["id"];
      r.closeness = Closeness(*original, frame, text, ExpectedSpans(*original, frame, program));
      report["closeness"] = {{"f1", r.closeness->f1},
                             {"precision", r.closeness->precision},
                             {"recall", r.closeness->recall}};
      report["controllability"] = nullptr;
      if (rec.contains("perturbed") && rec["perturbed"].is_string()) {
        const PromptSpec prompt = ParsePrompt(rec["perturbed"].get<std::string>());
        if (has_tags) r.control = CycleConsistency(prompt, tagged);
        else if (backends.srl) r.control = CycleConsistency(prompt, backends.srl->Predict(text));
        if (r.control) report["controllability"] = CheckJson(*r.control);
      }
      report["fluency"] = nullptr;
      if (backends.scorer) {
        const auto scores = backends.scorer->Score(std::vector<std::string>{original->text(), text});
        const FluencyReport fl = FluencyRatio(scores.at(0).loss, scores.at(1).loss);
        r.fluency = fl.ratio;
        report["fluency"] = {{"original_loss", scores[0].loss},
                             {"edited_loss", scores[1].loss},
                             {"ratio", fl.ratio}};
      }
      r.report = std::move(report);
    } catch (const Error& e) {
      where["error"] = e.what();
      r.failure = std::move(where);
    }
  });

  EvalTotals t;
  for (auto& r : results) {
    if (r.failure) {
      summary.failures.push_back(std::move(*r.failure));
      continue;
    }
    out << Dump(*r.report) << '\n';
    ++summary.emitted;
    ++t.pairs;
    t.f1 += r.closeness->f1;
    t.precision += r.closeness->precision;
    t.recall += r.closeness->recall;
    if (r.control) {
      ++t.checked;
      t.all_ok += r.control->all_ok();
      t.lemma += r.control->verb.lemma_ok;
      t.tense += r.control->verb.tense_ok;
      t.voice += r.control->verb.voice_ok;
      for (const auto& a : r.control->per_arg) {
        ++t.arg_checks;
        t.role += a.role_ok;
        t.content += a.content_ok;
        t.spec += a.spec_ok;
      }
    }
    if (r.fluency) {
      ++t.fluency_n;
      t.fluency += *r.fluency;
    }
  }
  return t.ToJson();
}

struct FilterOptions {
  std::string input;
  double keep = 0.0;
  std::string score_field = "perplexity";
  std::string text_field = "text";
};

json RunFilter(const CommonOptions&, const FilterOptions& fo, const Backends& backends,
               Summary& summary, std::ostream& out) {
  if (!(fo.keep > 0.0 && fo.keep <= 1.0)) throw ConfigError("--keep must be in (0, 1]");
  const std::vector<Line> lines = ReadLines(fo.input);
  summary.records = lines.size();
  std::vector<json> records;
  std::vector<double> scores;
  std::vector<std::size_t> to_score;  // indices into records
  for (const Line& l : lines) {
    json rec;
    try {
      rec = json::parse(l.text);
    } catch (const json::exception& e) {
      summary.Fail({{"line", l.number}}, std::string("invalid JSON: ") + e.what());
      continue;
    }
    if (!rec.is_object()) {
      summary.Fail({{"line", l.number}}, "record is not a JSON object");
      continue;
    }
    if (rec.contains(fo.score_field) && rec[fo.score_field].is_number()) {
      scores.push_back(rec[fo.score_field].get<double>());
    } else if (backends.scorer && rec.contains(fo.text_field) && rec[fo.text_field].is_string()) {
      scores.push_back(std::nan(""));
      to_score.push_back(records.size());
    } else {
      summary.Fail({{"line", l.number}},
                   "no numeric \"" + fo.score_field + "\" and no scorable \"" + fo.text_field +
                       "\"");
      continue;
    }
    records.push_back(std::move(rec));
  }
  if (!to_score.empty()) {
    std::vector<std::string> texts;
    for (std::size_t k : to_score) texts.push_back(records[k][fo.text_field].get<std::string>());
    const auto res = backends.scorer->Score(texts);
    for (std::size_t j = 0; j < to_score.size(); ++j) {
      scores[to_score[j]] = res.at(j).perplexity;
      records[to_score[j]][fo.score_field] = res[j].perplexity;
    }
  }
  std::vector<std::size_t> kept;
  if (!records.empty()) kept = PerplexityFilterIndices(scores, fo.keep);
  for (std::size_t k : kept) out << Dump(records[k]) << '\n';
  summary.emitted = kept.size();
  return {{"scored", records.size()}, {"kept", kept.size()}, {"keep_fraction", fo.keep}};
}

void AddCommon(CLI::App& app, CommonOptions& o, bool gen_flags) {
  app.add_flag("--mock", o.mock, "Use the in-process mock generator, SRL predictor and scorer");
  app.add_option("--jobs", o.jobs, "Worker threads; output order is unaffected")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Base seed for every sampled choice");
  app.add_option("--out", o.out, "Output JSON Lines file (default: standard output)");
  app.add_option("--config", o.config,
                 "JSON backend config (gen_url, srl_url, score_url, timeout_seconds, "
                 "max_retries, backoff_ms)");
  if (gen_flags) {
    app.add_option("--gen-url", o.gen_url, "Generator base URL (overrides TAILOR_GEN_URL)");
    app.add_option("--srl-url", o.srl_url, "SRL predictor base URL (overrides TAILOR_SRL_URL)");
    app.add_option("--score-url", o.score_url, "Scorer base URL (overrides TAILOR_SCORE_URL)");
  }
}

void AddGenerationFlags(CLI::App& app, GenerationOptions& g) {
  app.add_option("--n-beams", g.n_beams, "Beam width requested from the generator")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-candidates", g.max_candidates, "Generations kept per prompt")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile semantic-role prompts, perturb them and build datasets.", "srlgen"};
  app.require_subcommand(1);
  CommonOptions common;
  AddCommon(app, common, true);
  app.fallthrough();

  CompileOptions co;
  CLI::App* compile = app.add_subcommand("compile", "Compile corpus frames into prompts and targets");
  compile->add_option("--corpus", co.corpus, "Corpus JSON Lines")->required();
  compile->add_option("--frame", co.frame, "Only this frame index");
  compile->add_option("--mask", co.mask, "all, none or comma-separated roles (default all)");
  compile->add_option("--extra-blanks", co.extra_blanks, "Extra empty blanks (seeded placement)");
  compile->add_flag("--sample", co.sample, "Sample masks and keywords as for training data");

  PerturbOptions po;
  CLI::App* perturb = app.add_subcommand("perturb", "Apply a perturbation program to every frame");
  perturb->add_option("--corpus", po.corpus, "Corpus JSON Lines")->required();
  perturb->add_option("--ops", po.ops, "Program applied to every frame");
  perturb->add_option("--ops-file", po.ops_file, "One program per corpus line");
  perturb->add_option("--frame", po.frame, "Only this frame index");
  perturb->add_option("--mask", po.mask, "Roles masked before perturbing (default all)");
  AddGenerationFlags(*perturb, po.gen);

  GenDataOptions go;
  CLI::App* gendata = app.add_subcommand("gen-data", "Emit positive and negative training examples");
  gendata->add_option("--corpus", go.corpus, "Corpus JSON Lines")->required();
  gendata->add_option("--table", go.table, "Keyword table JSON; loaded if present, else written");

  RecipeOptions ro;
  CLI::App* recipe = app.add_subcommand("recipe", "Run a named perturbation recipe");
  recipe->add_option("--name", ro.name, "Recipe name")->required();
  recipe->add_option("--params", ro.params, "k=v,... recipe parameters");
  recipe->add_option("--corpus", ro.corpus, "Corpus JSON Lines")->required();
  recipe->add_flag("--best", ro.best, "Keep only the lowest-perplexity candidate per sentence");
  AddGenerationFlags(*recipe, ro.gen);

  EvalOptions eo;
  CLI::App* eval = app.add_subcommand("eval", "Closeness, controllability and fluency per pair");
  eval->add_option("--in", eo.input, "Pairs JSON Lines")->required();
  eval->add_option("--corpus", eo.corpus, "Corpus resolving pair ids to original sentences");

  FilterOptions fo;
  CLI::App* filter = app.add_subcommand("filter", "Keep the lowest-perplexity fraction");
  filter->add_option("--in", fo.input, "Scored candidates JSON Lines")->required();
  filter->add_option("--keep", fo.keep, "Fraction kept, in (0, 1]")->required();
  filter->add_option("--score-field", fo.score_field, "Score field (default perplexity)");
  filter->add_option("--text-field", fo.text_field, "Text scored when the score is missing");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs[0]->help());
    return kExitConfigError;
  }
  common.seed_given = app.count("--seed") > 0;

  Summary summary;
  json extra = json::object();
  std::string name;
  try {
    auto file = OpenOut(common.out);
    std::ostream& sink = file ? *file : out;
    Backends backends = BuildBackends(common, err);
    if (compile->parsed()) {
      name = "compile";
      RunCompile(common, co, summary, sink);
    } else if (perturb->parsed()) {
      name = "perturb";
      RunPerturb(common, po, backends, summary, sink);
    } else if (gendata->parsed()) {
      name = "gen-data";
      extra = RunGenData(common, go, summary, sink);
    } else if (recipe->parsed()) {
      name = "recipe";
      RunRecipeCommand(common, ro, backends, summary, sink);
    } else if (eval->parsed()) {
      name = "eval";
      extra = RunEval(common, eo, backends, summary, sink);
    } else if (filter->parsed()) {
      name = "filter";
      extra = RunFilter(common, fo, backends, summary, sink);
    }
    sink.flush();
    if (file && !*file) throw ConfigError("failed writing " + common.out);
  } catch (const ConfigError& e) {
    err << Dump({{"subcommand", name}, {"error", e.what()}}) << '\n';
    return kExitConfigError;
  } catch (const TransportError& e) {
    err << Dump({{"subcommand", name}, {"error", e.what()}, {"request_id", e.request_id()}})
        << '\n';
    return kExitRecordFailures;
  } catch (const Error& e) {
    err << Dump({{"subcommand", name}, {"error", e.what()}}) << '\n';
    return kExitConfigError;
  }

  json report = {{"subcommand", name},
                 {"records", summary.records},
                 {"emitted", summary.emitted},
                 {"failed", summary.failures.size()},
                 {"failures", summary.failures},
                 {"skipped", summary.skipped}};
  for (auto& [k, v] : extra.items()) report[k] = v;
  err << Dump(report) << '\n';
  return summary.failures.empty() ? kExitOk : kExitRecordFailures;
}

int RunCli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return RunCli(args, std::cout, std::cerr);
}

}  // namespace srlgen
