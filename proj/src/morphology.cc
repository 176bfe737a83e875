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

#include "srlgen/morphology.h"

#include <map>
#include <set>

#include "srlgen/text.h"

namespace srlgen {

namespace {

struct Irregular {
  std::string_view past;
  std::string_view participle;
};

const std::map<std::string, Irregular, std::less<>>& IrregularVerbs() {
  static const std::map<std::string, Irregular, std::less<>> kTable = {
      {"be", {"was", "been"}},         {"have", {"had", "had"}},
      {"do", {"did", "done"}},         {"go", {"went", "gone"}},
      {"say", {"said", "said"}},       {"see", {"saw", "seen"}},
      {"make", {"made", "made"}},      {"take", {"took", "taken"}},
      {"come", {"came", "come"}},      {"give", {"gave", "given"}},
      {"get", {"got", "gotten"}},      {"know", {"knew", "known"}},
      {"think", {"thought", "thought"}}, {"find", {"found", "found"}},
      {"tell", {"told", "told"}},      {"become", {"became", "become"}},
      {"leave", {"left", "left"}},     {"feel", {"felt", "felt"}},
      {"bring", {"brought", "brought"}}, {"begin", {"began", "begun"}},
      {"keep", {"kept", "kept"}},      {"hold", {"held", "held"}},
      {"write", {"wrote", "written"}}, {"stand", {"stood", "stood"}},
      {"hear", {"heard", "heard"}},    {"let", {"let", "let"}},
      {"mean", {"meant", "meant"}},    {"set", {"set", "set"}},
      {"meet", {"met", "met"}},        {"run", {"ran", "run"}},
      {"pay", {"paid", "paid"}},       {"sit", {"sat", "sat"}},
      {"speak", {"spoke", "spoken"}},  {"lie", {"lay", "lain"}},
      {"lead", {"led", "led"}},        {"read", {"read", "read"}},
      {"grow", {"grew", "grown"}},     {"lose", {"lost", "lost"}},
      {"fall", {"fell", "fallen"}},    {"send", {"sent", "sent"}},
      {"build", {"built", "built"}},   {"understand", {"understood", "understood"}},
      {"draw", {"drew", "drawn"}},     {"break", {"broke", "broken"}},
      {"spend", {"spent", "spent"}},   {"cut", {"cut", "cut"}},
      {"rise", {"rose", "risen"}},     {"drive", {"drove", "driven"}},
      {"buy", {"bought", "bought"}},   {"wear", {"wore", "worn"}},
      {"choose", {"chose", "chosen"}}, {"eat", {"ate", "eaten"}},
      {"fight", {"fought", "fought"}}, {"throw", {"threw", "thrown"}},
      {"catch", {"caught", "caught"}}, {"teach", {"taught", "taught"}},
      {"sell", {"sold", "sold"}},      {"win", {"won", "won"}},
      {"put", {"put", "put"}},         {"hit", {"hit", "hit"}},
      {"shut", {"shut", "shut"}},      {"hurt", {"hurt", "hurt"}},
      {"cost", {"cost", "cost"}},      {"beat", {"beat", "beaten"}},
      {"forget", {"forgot", "forgotten"}}, {"fly", {"flew", "flown"}},
      {"sing", {"sang", "sung"}},      {"swim", {"swam", "swum"}},
      {"drink", {"drank", "drunk"}},   {"ride", {"rode", "ridden"}},
      {"steal", {"stole", "stolen"}},  {"hide", {"hid", "hidden"}},
      {"shake", {"shook", "shaken"}},  {"wake", {"woke", "woken"}},
      {"bite", {"bit", "bitten"}},     {"freeze", {"froze", "frozen"}},
      {"feed", {"fed", "fed"}},        {"seek", {"sought", "sought"}},
      {"sleep", {"slept", "slept"}},   {"deal", {"dealt", "dealt"}},
      {"lend", {"lent", "lent"}},      {"bend", {"bent", "bent"}},
      {"shoot", {"shot", "shot"}},     {"dig", {"dug", "dug"}},
      {"hang", {"hung", "hung"}},      {"strike", {"struck", "struck"}},
      {"forgive", {"forgave", "forgiven"}}, {"show", {"showed", "shown"}},
      {"fit", {"fit", "fit"}},         {"spread", {"spread", "spread"}},
      {"bear", {"bore", "borne"}},     {"shine", {"shone", "shone"}},
      {"swear", {"swore", "sworn"}},   {"tear", {"tore", "torn"}},
      {"blow", {"blew", "blown"}},     {"ring", {"rang", "rung"}},
      {"sink", {"sank", "sunk"}},      {"slide", {"slid", "slid"}},
      {"stick", {"stuck", "stuck"}},   {"sting", {"stung", "stung"}},
      {"swing", {"swung", "swung"}},   {"quit", {"quit", "quit"}},
      {"bet", {"bet", "bet"}},         {"arise", {"arose", "arisen"}},
      {"overcome", {"overcame", "overcome"}}, {"withdraw", {"withdrew", "withdrawn"}},
  };
  return kTable;
}

// Final-stress verbs whose last consonant doubles ("preferred").
const std::set<std::string, std::less<>>& DoublingVerbs() {
  static const std::set<std::string, std::less<>> kVerbs = {
      "prefer", "refer", "occur", "admit", "commit", "permit", "omit",
      "submit", "control", "regret", "transfer", "compel", "propel",
      "rebel", "equip", "forbid", "upset", "begin"};
  return kVerbs;
}

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool DoublesFinal(std::string_view w) {
  if (DoublingVerbs().count(w)) return true;
  if (w.size() < 3 || w.size() > 4) return false;
  char c3 = w[w.size() - 1], c2 = w[w.size() - 2], c1 = w[w.size() - 3];
  if (IsVowel(c3) || c3 == 'w' || c3 == 'x' || c3 == 'y') return false;
  if (!IsVowel(c2) || IsVowel(c1)) return false;
  // Single vowel in the word (monosyllable).
  int vowels = 0;
  for (char c : w) vowels += IsVowel(c) ? 1 : 0;
  return vowels == 1;
}

bool EndsWith(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.substr(w.size() - suffix.size()) == suffix;
}

std::string RegularPast(std::string_view w) {
  std::string s(w);
  if (s.empty()) return s;
  if (EndsWith(s, "e")) return s + "d";
  if (s.size() >= 2 && s.back() == 'y' && !IsVowel(s[s.size() - 2]))
    return s.substr(0, s.size() - 1) + "ied";
  if (EndsWith(s, "c")) return s + "ked";
  if (DoublesFinal(s)) return s + s.back() + "ed";
  return s + "ed";
}

std::string Lower(std::string_view w) { return CaseFold(w); }

const std::set<std::string, std::less<>>& ModalWords() {
  static const std::set<std::string, std::less<>> kWords = {
      "will", "would", "shall", "should", "can", "could", "may", "might",
      "must", "'ll", "wo", "ca"};
  return kWords;
}

}  // namespace

std::string ThirdSingular(std::string_view lemma) {
  std::string w = Lower(lemma);
  if (w == "be") return "is";
  if (w == "have") return "has";
  if (w == "do") return "does";
  if (w == "go") return "goes";
  if (EndsWith(w, "s") || EndsWith(w, "x") || EndsWith(w, "z") ||
      EndsWith(w, "ch") || EndsWith(w, "sh") || EndsWith(w, "o"))
    return w + "es";
  if (w.size() >= 2 && w.back() == 'y' && !IsVowel(w[w.size() - 2]))
    return w.substr(0, w.size() - 1) + "ies";
  return w + "s";
}

std::string PastTense(std::string_view lemma) {
  std::string w = Lower(lemma);
  auto it = IrregularVerbs().find(w);
  if (it != IrregularVerbs().end()) return std::string(it->second.past);
  return RegularPast(w);
}

std::string PastParticiple(std::string_view lemma) {
  std::string w = Lower(lemma);
  auto it = IrregularVerbs().find(w);
  if (it != IrregularVerbs().end()) return std::string(it->second.participle);
  return RegularPast(w);
}

std::string PresentParticiple(std::string_view lemma) {
  std::string w = Lower(lemma);
  if (w == "be") return "being";
  if (EndsWith(w, "ie")) return w.substr(0, w.size() - 2) + "ying";
  if (EndsWith(w, "e") && !EndsWith(w, "ee") && w.size() > 2)
    return w.substr(0, w.size() - 1) + "ing";
  if (DoublesFinal(w)) return w + w.back() + "ing";
  return w + "ing";
}

std::string GuessLemma(std::string_view word) {
  std::string w = Lower(word);
  static const std::set<std::string, std::less<>> kBe = {
      "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m"};
  if (kBe.count(w)) return "be";
  if (w == "has" || w == "had" || w == "'ve") return "have";
  if (w == "does" || w == "did" || w == "done") return "do";
  for (const auto& [lemma, forms] : IrregularVerbs()) {
    if (w == forms.past || w == forms.participle) return lemma;
  }
  auto matches = [&](const std::string& cand, auto inflect) {
    return !cand.empty() && inflect(cand) == w;
  };
  std::vector<std::string> cands;
  if (EndsWith(w, "ed")) {
    std::string stem = w.substr(0, w.size() - 2);
    cands = {stem, stem + "e", w.substr(0, w.size() - 1)};
    if (EndsWith(w, "ied")) cands.push_back(w.substr(0, w.size() - 3) + "y");
    if (stem.size() >= 2 && stem.back() == stem[stem.size() - 2])
      cands.push_back(stem.substr(0, stem.size() - 1));
    for (const auto& c : cands)
      if (matches(c, [](const std::string& s) { return PastTense(s); })) return c;
  }
  if (EndsWith(w, "ing") && w.size() > 4) {
    std::string stem = w.substr(0, w.size() - 3);
    cands = {stem, stem + "e"};
    if (EndsWith(stem, "y")) cands.push_back(stem.substr(0, stem.size() - 1) + "ie");
    if (stem.size() >= 2 && stem.back() == stem[stem.size() - 2])
      cands.push_back(stem.substr(0, stem.size() - 1));
    for (const auto& c : cands)
      if (matches(c, [](const std::string& s) { return PresentParticiple(s); }))
        return c;
  }
  if (EndsWith(w, "s") && !EndsWith(w, "ss") && w.size() > 2) {
    cands = {w.substr(0, w.size() - 1), w.substr(0, w.size() - 2)};
    if (EndsWith(w, "ies")) cands.push_back(w.substr(0, w.size() - 3) + "y");
    for (const auto& c : cands)
      if (matches(c, [](const std::string& s) { return ThirdSingular(s); }))
        return c;
  }
  return w;
}

bool IsPluralPhrase(std::span<const std::string> words) {
  if (words.empty()) return false;
  static const std::set<std::string, std::less<>> kPlural = {
      "we", "they", "you", "these", "those", "both", "many", "people",
      "children", "men", "women", "us", "them"};
  for (const auto& w : words) {
    std::string f = Lower(w);
    if (f == "and") return true;
  }
  // Head noun approximated by the last word before a post-modifier.
  static const std::set<std::string, std::less<>> kBreak = {
      "who", "which", "that", "of", "in", "on", "at", "behind", "with",
      "by", "from", "for", "to"};
  std::string head = Lower(words[0]);
  for (const auto& w : words) {
    std::string f = Lower(w);
    if (kBreak.count(f)) break;
    head = f;
  }
  if (kPlural.count(head)) return true;
  if (head == "i" || head == "he" || head == "she" || head == "it") return false;
  return head.size() > 2 && head.back() == 's' && !EndsWith(head, "ss") &&
         !EndsWith(head, "us") && !EndsWith(head, "is");
}

std::vector<std::string> ConjugateVerb(std::string_view lemma, Voice voice,
                                       Tense tense, bool plural_subject) {
  std::string l = Lower(lemma);
  if (voice == Voice::kPassive) {
    std::string part = PastParticiple(l);
    switch (tense) {
      case Tense::kPast:
        return {plural_subject ? "were" : "was", part};
      case Tense::kPresent:
        return {plural_subject ? "are" : "is", part};
      case Tense::kFuture:
        return {"will", "be", part};
    }
  }
  switch (tense) {
    case Tense::kPast:
      if (l == "be") return {plural_subject ? "were" : "was"};
      return {PastTense(l)};
    case Tense::kPresent:
      if (l == "be") return {plural_subject ? "are" : "is"};
      return {plural_subject ? l : ThirdSingular(l)};
    case Tense::kFuture:
      return {"will", l};
  }
  return {l};
}

std::vector<Token> TagVerbGroup(std::span<const std::string> words,
                                std::optional<std::string_view> lemma_hint) {
  std::vector<Token> out;
  bool be_or_have = false;
  bool bare_context = false;  // preceded by a modal, "to" or do-support
  for (std::size_t i = 0; i < words.size(); ++i) {
    Token t;
    t.text = words[i];
    t.index = static_cast<int>(i);
    std::string w = Lower(words[i]);
    const bool last = i + 1 == words.size();
    if (!last) {
      if (ModalWords().count(w)) {
        t.pos = "MD";
        bare_context = true;
      } else if (w == "to") {
        t.pos = "TO";
        bare_context = true;
      } else if (w == "going") {
        t.pos = "VBG";
      } else {
        std::string lemma = GuessLemma(w);
        if (lemma == "be" || lemma == "have") be_or_have = true;
        if (lemma == "do") bare_context = true;
        if (w == "was" || w == "were" || w == "did" || w == "had") t.pos = "VBD";
        else if (w == "been" || w == "done") t.pos = "VBN";
        else if (w == "be" || w == "have" || w == "do") t.pos = "VB";
        else if (w == "being" || w == "having") t.pos = "VBG";
        else if (w == "is" || w == "has" || w == "does") t.pos = "VBZ";
        else t.pos = "VBP";
        t.lemma = lemma;
        if (w == "be" || w == "been" || w == "being") bare_context = false;
      }
      out.push_back(std::move(t));
      continue;
    }
    std::string lemma;
    if (lemma_hint) {
      std::string h = Lower(*lemma_hint);
      if (w == h || w == ThirdSingular(h) || w == PastTense(h) ||
          w == PastParticiple(h) || w == PresentParticiple(h))
        lemma = h;
    }
    if (lemma.empty()) lemma = GuessLemma(w);
    const bool is_past = w == PastTense(lemma);
    const bool is_part = w == PastParticiple(lemma);
    if (w == PresentParticiple(lemma)) {
      t.pos = "VBG";
    } else if (is_part && (be_or_have || !is_past)) {
      t.pos = "VBN";
    } else if (is_past && w != lemma) {
      t.pos = "VBD";
    } else if (w == ThirdSingular(lemma) && w != lemma) {
      t.pos = "VBZ";
    } else if (bare_context) {
      t.pos = "VB";
    } else {
      t.pos = "VBP";
    }
    t.lemma = lemma;
    out.push_back(std::move(t));
  }
  return out;
}

VerbFeatures AnalyzeVerbGroup(std::span<const std::string> words,
                              std::optional<std::string_view> lemma_hint) {
  SrlSentence s;
  s.tokens = TagVerbGroup(words, lemma_hint);
  std::vector<int> aux;
  for (int i = 0; i + 1 < s.size(); ++i) aux.push_back(i);
  return DetectVerbFeatures(s, s.size() - 1, aux);
}

}  // namespace srlgen
