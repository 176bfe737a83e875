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

#ifndef SRLGEN_METRICS_H_
#define SRLGEN_METRICS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srlgen/error.h"
#include "srlgen/perturb.h"
#include "srlgen/prompt.h"
#include "srlgen/srl.h"

namespace srlgen {

// For each token of `original`: true iff it is left unmatched by every
// minimum unit-cost (insert/delete/substitute) token alignment with
// `edited`. Comparison is case-folded.
std::vector<bool> ChangedTokens(std::span<const std::string> original,
                                std::span<const std::string> edited);

// True iff at least half of the span's tokens are substituted or deleted
// when the span is aligned with its edited counterpart. Throws
// ContractViolation for an empty span.
bool SpanChanged(std::span<const std::string> original_span,
                 std::span<const std::string> aligned_edited);

inline constexpr double kSpanChangedThreshold = 0.5;

struct SpanReport {
  Span span;
  std::string label;
  bool expected = false;
  bool changed = false;
  int weight = 0;
};

struct ClosenessReport {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  std::vector<SpanReport> per_span;
};

struct ExpectedChange {
  std::vector<Span> spans;
  bool include_verb = false;  // a verb op is present; verb scored as a weight-1 span
};

// Spans of the frame's args touched by the program, plus the verb for verb
// ops. Inserted roles have no original span and contribute nothing.
ExpectedChange ExpectedSpans(const SrlSentence& original, int frame_idx,
                             const OpProgram& program);

// Weighted F1 between the expected-to-change and actually-changed spans of
// the frame (args, plus the predicate when expected.include_verb).
ClosenessReport Closeness(const SrlSentence& original, int frame_idx,
                          std::string_view edited, const ExpectedChange& expected);

struct VerbCheck {
  bool lemma_ok = false;
  bool tense_ok = false;
  bool voice_ok = false;
};

struct ArgCheck {
  std::string role;
  bool role_ok = false;
  bool content_ok = false;
  bool spec_ok = false;
  bool ambiguous = false;  // several candidate spans carried the role
  std::optional<std::string> matched;
};

struct ControllabilityReport {
  VerbCheck verb;
  std::vector<ArgCheck> per_arg;

  bool all_ok() const;
};

// Checks the prompt's control codes against a tagged generation.
ControllabilityReport CycleConsistency(const PromptSpec& prompt,
                                       const TaggedOutput& observed);
// Same, against an SRL prediction of the generated text. Uses the frame
// whose lemma matches the verb code (first frame otherwise).
ControllabilityReport CycleConsistency(const PromptSpec& prompt,
                                       const SrlSentence& observed);

struct FluencyReport {
  double ratio = 1.0;
};

FluencyReport FluencyRatio(double original_loss, double edited_loss);

// ceil(keep_fraction * n), robust to floating-point error in the product.
std::size_t KeepCount(std::size_t n, double keep_fraction);

// Indices (ascending) of the KeepCount lowest scores; ties at the cut go to
// the earlier position. Throws ContractViolation unless 0 < f <= 1.
std::vector<std::size_t> PerplexityFilterIndices(std::span<const double> scores,
                                                 double keep_fraction);

template <typename T>
std::vector<T> PerplexityFilter(const std::vector<std::pair<T, double>>& candidates,
                                double keep_fraction) {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const auto& c : candidates) scores.push_back(c.second);
  std::vector<T> out;
  for (std::size_t i : PerplexityFilterIndices(scores, keep_fraction))
    out.push_back(candidates[i].first);
  return out;
}

std::size_t SelectBestIndex(std::span<const double> scores);

template <typename T>
const T& SelectBest(const std::vector<std::pair<T, double>>& candidates) {
  std::vector<double> scores;
  for (const auto& c : candidates) scores.push_back(c.second);
  return candidates[SelectBestIndex(scores)].first;
}

}  // namespace srlgen

#endif  // SRLGEN_METRICS_H_
