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

#ifndef SRLGEN_TEXT_H_
#define SRLGEN_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace srlgen {

// Whitespace tokenization; runs of spaces collapse.
std::vector<std::string> SplitTokens(std::string_view text);

std::string JoinTokens(std::span<const std::string> tokens,
                       std::string_view sep = " ");

// ASCII lowercase. Keyword comparison throughout the library is case-folded.
std::string CaseFold(std::string_view text);

bool EqualsFolded(std::string_view a, std::string_view b);

// True iff `needle` is a (not necessarily contiguous) subsequence of
// `haystack`, comparing tokens case-folded.
bool IsFoldedSubsequence(std::span<const std::string> needle,
                         std::span<const std::string> haystack);

std::string_view Trim(std::string_view text);

bool IsPunctuation(std::string_view token);

// Lowercases the first character only ("The athlete" -> "the athlete").
std::string LowerFirst(std::string_view text);

}  // namespace srlgen

#endif  // SRLGEN_TEXT_H_
