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

#ifndef SRLGEN_TESTS_TEST_UTIL_H_
#define SRLGEN_TESTS_TEST_UTIL_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "srlgen/metrics.h"
#include "srlgen/perturb.h"
#include "srlgen/prompt.h"
#include "srlgen/rng.h"
#include "srlgen/srl.h"

namespace srlgen_test {

std::string TestDataPath(std::string_view name);
std::string GoldenPath(std::string_view name);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

// Fresh path under the system temp directory; the file does not exist yet.
std::string TempPath(std::string_view stem);

// All sentences of a testdata JSONL file. Aborts the test binary if any
// record is rejected.
std::vector<srlgen::SrlSentence> LoadFixture(std::string_view name);
std::shared_ptr<const srlgen::SrlSentence> LoadSentence(std::string_view fixture,
                                                        std::string_view id);

// "In the operating room , the doctor comforted the athlete ."
std::shared_ptr<const srlgen::SrlSentence> OperatingRoom();
// "In the operation room , the doctor comforted the athlete ."
std::shared_ptr<const srlgen::SrlSentence> OperationRoom();

// Drops the space before , . ? ! so tokenized output compares with
// ordinary prose spacing.
std::string Detokenize(std::string_view text);

// Valid prompt over a small vocabulary: distinct roles, known verb lemmas,
// blanks numbered left to right.
srlgen::PromptSpec RandomPrompt(srlgen::Rng& rng);

// Syntactically valid program (role scopes match op kinds, one DELETE per
// role at most).
srlgen::OpProgram RandomProgram(srlgen::Rng& rng);

// Closeness recomputed by enumerating every edit script between the two
// token sequences (exponential; keep both under ~8 tokens).
struct OracleScores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};
OracleScores OracleCloseness(const srlgen::SrlSentence& original, int frame_idx,
                             const std::vector<std::string>& edited,
                             const srlgen::ExpectedChange& expected);

struct ClosenessCase {
  srlgen::SrlSentence original;
  std::vector<std::string> edited;
  srlgen::ExpectedChange expected;
};
// Short one-frame sentence over a tiny vocabulary (so alignments tie),
// a random edit of it and a random expectation.
ClosenessCase RandomClosenessCase(srlgen::Rng& rng);

}  // namespace srlgen_test

#endif  // SRLGEN_TESTS_TEST_UTIL_H_
