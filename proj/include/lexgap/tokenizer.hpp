// Copyright 2026 The lexgap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexgap {

/// Identifier recorded in run manifests; bump when the rule below changes.
inline constexpr std::string_view kTokenizerRuleId = "alnum-runs-lower/icu-simple-case/v1";

using TokenSeq = std::vector<std::string>;

/// Splits UTF-8 text on every maximal run of non-alphanumeric code points and
/// lowercases each piece with the Unicode simple case mapping.
///
/// A code point is alphanumeric when its general category is a letter (L*) or
/// a decimal digit (Nd). Combining marks (Mn, Mc) continue a token that is
/// already open. Malformed UTF-8 bytes act as separators. No stemming, no
/// stop-word removal; numbers stay tokens. The result does not depend on the
/// process locale.
TokenSeq tokenize(std::string_view text);

/// Number of tokens tokenize(text) would return, without materializing them.
std::size_t count_tokens(std::string_view text);

/// Sliding windows of width n, stride 1. Throws std::invalid_argument if n < 1.
std::vector<std::vector<std::string>> ngrams(const TokenSeq& tokens, std::size_t n);

/// Joins tokens with single spaces (inverse of tokenize up to separators).
std::string render(const TokenSeq& tokens);

}  // namespace lexgap
