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

#ifndef SRLGEN_TRAIN_DATA_H_
#define SRLGEN_TRAIN_DATA_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "srlgen/prompt.h"
#include "srlgen/srl.h"

namespace srlgen {

inline constexpr std::string_view kStrategyPositive = "positive";
inline constexpr std::string_view kStrategySwapControls = "swap-controls";
inline constexpr std::string_view kStrategyResampleContent = "resample-content";
inline constexpr std::string_view kStrategyResampleSpec = "resample-spec";

struct Provenance {
  std::string sentence_id;
  int frame_idx = 0;
  std::string strategy;
  std::vector<std::string> skipped;  // negative strategies that had nothing to perturb

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TrainingExample {
  std::string input;
  std::string target;
  int reward = 1;
  Provenance provenance;

  friend bool operator==(const TrainingExample&, const TrainingExample&) = default;
};

nlohmann::json ToJson(const TrainingExample& example);
TrainingExample TrainingExampleFromJson(const nlohmann::json& j);

// Keywords used for training are case-folded so that sentence-initial
// capitalization does not leak into the controls.
inline constexpr KeywordOptions kTrainingKeywordOptions{true, 3};

class KeywordTable {
 public:
  static constexpr std::size_t kTopK = 15;
  using Key = std::pair<RoleLabel, Specificity>;
  using Entry = std::vector<std::pair<std::string, std::size_t>>;

  // Counts extracted keyword candidates (except '*') per (role, spec) and
  // keeps the kTopK most frequent, ties in lexicographic order. Predicate
  // lemmas are counted the same way in a separate list.
  static KeywordTable Build(const std::vector<SrlSentence>& corpus, std::uint64_t seed);

  // nullptr when the key was never seen.
  const Entry* Find(const RoleLabel& role, Specificity spec) const;
  const std::map<Key, Entry>& entries() const { return entries_; }
  const Entry& verb_lemmas() const { return verb_lemmas_; }

  nlohmann::json ToJson() const;
  static KeywordTable FromJson(const nlohmann::json& j);

  friend bool operator==(const KeywordTable&, const KeywordTable&) = default;

 private:
  std::map<Key, Entry> entries_;
  Entry verb_lemmas_;
};

// Random choices behind one positive example.
CompileRequest SamplePositiveRequest(const SrlSentence& sentence, int frame_idx,
                                     std::uint64_t seed);

// A positive example together with the compiled prompt it came from. The
// prompt keeps the code-to-span alignment that negatives need to relabel
// the target.
struct PositiveSample {
  PromptSpec prompt;
  TrainingExample example;
};

// Compiles `request` and pairs the serialized prompt with its target.
PositiveSample MakePositive(std::shared_ptr<const SrlSentence> sentence,
                            const CompileRequest& request);

// SamplePositiveRequest + MakePositive. Throws ContractViolation when the
// frame does not exist.
PositiveSample SamplePositive(std::shared_ptr<const SrlSentence> sentence, int frame_idx,
                              std::uint64_t seed);
PositiveSample SamplePositive(const SrlSentence& sentence, int frame_idx, std::uint64_t seed);

struct NegativeSet {
  std::vector<TrainingExample> examples;
  std::vector<std::string> skipped;
};

// Up to three reward -1 examples, one per applicable strategy, in the order
// swap-controls, resample-content, resample-spec. resample-content also
// swaps the verb lemma when the table offers another one, but applies only
// when some argument content can change.
NegativeSet GenNegatives(const PositiveSample& positive, const KeywordTable& table,
                         std::uint64_t seed);

struct DatasetIssue {
  std::size_t record = 0;  // sentence position in the corpus
  int frame_idx = 0;
  std::string message;
};

struct DatasetSummary {
  std::size_t sentences = 0;
  std::size_t frames = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::map<std::string, std::size_t> skipped;  // per strategy
  std::vector<DatasetIssue> failures;

  nlohmann::json ToJson() const;
};

// One positive and its negatives per (sentence, frame), streamed to `sink`
// in corpus order. Generation runs on `jobs` threads; output is identical
// for any job count.
DatasetSummary GenDataset(const std::vector<SrlSentence>& corpus, const KeywordTable& table,
                          std::uint64_t seed, int jobs,
                          const std::function<void(const TrainingExample&)>& sink);

}  // namespace srlgen

#endif  // SRLGEN_TRAIN_DATA_H_
