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

#include "srlgen/corpus.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

#include "srlgen/error.h"
#include "srlgen/text.h"

namespace srlgen {

namespace {

using nlohmann::json;

int GetInt(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer())
    throw SchemaError(std::string("missing integer field \"") + key + "\"");
  return it->get<int>();
}

std::optional<std::string> GetOptString(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string())
    throw SchemaError(std::string("field \"") + key + "\" must be a string");
  return it->get<std::string>();
}

std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// Strips a leading BIO marker.
std::string BareTag(const std::string& tag) {
  std::string t = Upper(tag);
  if (t.rfind("B-", 0) == 0 || t.rfind("I-", 0) == 0) t = t.substr(2);
  return t;
}

void CheckSpan(int start, int end, int n, const std::string& what) {
  if (start < 0 || end > n || start >= end)
    throw RangeError(what + " [" + std::to_string(start) + "," +
                     std::to_string(end) + ") out of range for " +
                     std::to_string(n) + " tokens");
}

PredicateFrame FrameFromJson(const json& jf, const SrlSentence& sentence,
                             std::vector<std::string>* warnings) {
  if (!jf.is_object()) throw SchemaError("frame must be an object");
  const int n = sentence.size();
  PredicateFrame frame;
  frame.verb_index = GetInt(jf, "verb_index");
  if (frame.verb_index < 0 || frame.verb_index >= n)
    throw RangeError("verb_index " + std::to_string(frame.verb_index) +
                     " out of range");
  auto jargs = jf.find("args");
  if (jargs != jf.end()) {
    if (!jargs->is_array()) throw SchemaError("\"args\" must be an array");
    for (const json& ja : *jargs) {
      if (!ja.is_object()) throw SchemaError("arg must be an object");
      auto tag = GetOptString(ja, "tag");
      if (!tag) throw SchemaError("arg without \"tag\"");
      ArgSpan arg{RoleLabel::Kind::kOther, GetInt(ja, "start"), GetInt(ja, "end"),
                  *tag};
      CheckSpan(arg.start, arg.end, n, "arg " + *tag);
      std::string bare = BareTag(*tag);
      if (bare.rfind("C-", 0) == 0) {
        if (warnings)
          warnings->push_back("dropped discontinuous arg " + *tag);
        continue;
      }
      if (bare.rfind("R-", 0) == 0) {
        arg.role = MapRoleLabel(bare.substr(2));
        frame.referents.push_back(std::move(arg));
        if (warnings) warnings->push_back("dropped referent arg " + *tag);
        continue;
      }
      auto fn = GetOptString(ja, "function");
      arg.role = fn ? MapRoleLabel(bare, *fn) : MapRoleLabel(bare);
      frame.args.push_back(std::move(arg));
    }
  }
  std::sort(frame.args.begin(), frame.args.end(),
            [](const ArgSpan& a, const ArgSpan& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < frame.args.size(); ++i) {
    const ArgSpan& a = frame.args[i];
    if (a.span().contains(frame.verb_index))
      throw ContractViolation("verb index inside arg " + a.raw_tag);
    if (i > 0 && frame.args[i - 1].span().overlaps(a.span()))
      throw ContractViolation("overlapping args " + frame.args[i - 1].raw_tag +
                              " and " + a.raw_tag);
  }

  auto jaux = jf.find("aux_indices");
  if (jaux != jf.end() && !jaux->is_null()) {
    if (!jaux->is_array()) throw SchemaError("\"aux_indices\" must be an array");
    for (const json& x : *jaux) {
      if (!x.is_number_integer()) throw SchemaError("aux index must be an integer");
      int i = x.get<int>();
      if (i < 0 || i >= n || i == frame.verb_index)
        throw RangeError("aux index " + std::to_string(i) + " out of range");
      frame.aux_indices.push_back(i);
    }
    std::sort(frame.aux_indices.begin(), frame.aux_indices.end());
    frame.aux_indices.erase(
        std::unique(frame.aux_indices.begin(), frame.aux_indices.end()),
        frame.aux_indices.end());
  } else {
    frame.aux_indices = DetectAuxiliaries(sentence, frame.verb_index, frame.args);
  }
  for (int i : frame.aux_indices)
    for (const auto& a : frame.args)
      if (a.span().contains(i))
        throw ContractViolation("aux index " + std::to_string(i) + " inside arg " +
                                a.raw_tag);

  auto voice = GetOptString(jf, "voice");
  auto tense = GetOptString(jf, "tense");
  auto lemma = GetOptString(jf, "lemma");
  if (voice && !ParseVoice(*voice)) throw SchemaError("bad voice " + *voice);
  if (tense && !ParseTense(*tense)) throw SchemaError("bad tense " + *tense);
  if (voice && tense) {
    frame.voice = *ParseVoice(*voice);
    frame.tense = *ParseTense(*tense);
    const Token& v = sentence.tokens[frame.verb_index];
    frame.lemma = lemma ? *lemma : (v.lemma ? *v.lemma : CaseFold(v.text));
  } else {
    VerbFeatures f = DetectVerbFeatures(sentence, frame.verb_index,
                                        frame.aux_indices, frame.args);
    frame.voice = voice ? *ParseVoice(*voice) : f.voice;
    frame.tense = tense ? *ParseTense(*tense) : f.tense;
    frame.lemma = lemma ? *lemma : f.lemma;
  }
  if (frame.lemma.empty()) throw ContractViolation("empty verb lemma");
  return frame;
}

}  // namespace

SrlSentence SentenceFromJson(const json& record, std::string id,
                             std::vector<std::string>* warnings) {
  if (!record.is_object()) throw SchemaError("record must be an object");
  SrlSentence s;
  if (auto it = record.find("id"); it != record.end()) {
    if (it->is_string()) id = it->get<std::string>();
    else if (it->is_number_integer()) id = std::to_string(it->get<long long>());
  }
  s.id = std::move(id);
  auto jt = record.find("tokens");
  if (jt == record.end() || !jt->is_array())
    throw SchemaError("record without \"tokens\" array");
  for (const json& tok : *jt) {
    Token t;
    t.index = s.size();
    if (tok.is_string()) {
      t.text = tok.get<std::string>();
    } else if (tok.is_object()) {
      auto text = GetOptString(tok, "text");
      if (!text) throw SchemaError("token without \"text\"");
      t.text = *text;
      t.pos = GetOptString(tok, "pos");
      t.lemma = GetOptString(tok, "lemma");
    } else {
      throw SchemaError("token must be a string or object");
    }
    if (t.text.empty() || SplitTokens(t.text).size() != 1)
      throw ContractViolation("token " + std::to_string(t.index) +
                              " is empty or contains whitespace");
    s.tokens.push_back(std::move(t));
  }
  if (s.tokens.empty()) throw ContractViolation("sentence has no tokens");
  if (auto jc = record.find("chunks"); jc != record.end() && !jc->is_null()) {
    if (!jc->is_array()) throw SchemaError("\"chunks\" must be an array");
    for (const json& c : *jc) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
          !c[1].is_number_integer())
        throw SchemaError("chunk must be [start, end]");
      Span sp{c[0].get<int>(), c[1].get<int>()};
      CheckSpan(sp.start, sp.end, s.size(), "chunk");
      s.chunks.push_back(sp);
    }
  }
  if (auto jf = record.find("frames"); jf != record.end() && !jf->is_null()) {
    if (!jf->is_array()) throw SchemaError("\"frames\" must be an array");
    for (const json& f : *jf) s.frames.push_back(FrameFromJson(f, s, warnings));
  }
  return s;
}

Corpus ParseCorpus(std::string_view bytes) {
  Corpus corpus;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t nl = bytes.find('\n', pos);
    if (nl == std::string_view::npos) nl = bytes.size();
    std::string_view line = Trim(bytes.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded()) throw ParseError("malformed JSON record", line_no);
    if (!record.is_object() || !record.contains("tokens") ||
        !record["tokens"].is_array())
      throw ParseError("record is not an object with a \"tokens\" array",
                       line_no);
    std::vector<std::string> warnings;
    try {
      corpus.sentences.push_back(
          SentenceFromJson(record, std::to_string(line_no), &warnings));
      for (auto& w : warnings) corpus.warnings.push_back({line_no, std::move(w)});
    } catch (const Error& e) {
      corpus.rejected.push_back({line_no, e.what()});
    }
  }
  return corpus;
}

json SentenceToJson(const SrlSentence& s) {
  json out;
  out["id"] = s.id;
  json toks = json::array();
  for (const Token& t : s.tokens) {
    json jt;
    jt["text"] = t.text;
    if (t.pos) jt["pos"] = *t.pos;
    if (t.lemma) jt["lemma"] = *t.lemma;
    toks.push_back(std::move(jt));
  }
  out["tokens"] = std::move(toks);
  json frames = json::array();
  for (const PredicateFrame& f : s.frames) {
    json jf;
    jf["verb_index"] = f.verb_index;
    jf["lemma"] = f.lemma;
    jf["voice"] = std::string(ToString(f.voice));
    jf["tense"] = std::string(ToString(f.tense));
    jf["aux_indices"] = f.aux_indices;
    json args = json::array();
    auto emit = [&](const ArgSpan& a, bool referent) {
      json ja;
      std::string tag = a.raw_tag.empty() ? a.role.name() : a.raw_tag;
      if (referent && BareTag(tag).rfind("R-", 0) != 0) tag = "R-" + tag;
      ja["tag"] = tag;
      ja["start"] = a.start;
      ja["end"] = a.end;
      // Non-PropBank tags (role names) map to themselves; keep numbered
      // args with a function round-trippable.
      if (!referent && a.role.name() != MapRoleLabel(tag).name())
        ja["function"] = a.role.name();
      args.push_back(std::move(ja));
    };
    for (const ArgSpan& a : f.args) emit(a, false);
    for (const ArgSpan& a : f.referents) emit(a, true);
    jf["args"] = std::move(args);
    frames.push_back(std::move(jf));
  }
  out["frames"] = std::move(frames);
  if (!s.chunks.empty()) {
    json chunks = json::array();
    for (const Span& c : s.chunks) chunks.push_back({c.start, c.end});
    out["chunks"] = std::move(chunks);
  }
  return out;
}

}  // namespace srlgen
