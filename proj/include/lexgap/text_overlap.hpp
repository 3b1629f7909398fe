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
#include <vector>

#include "lexgap/tokenizer.hpp"

namespace lexgap {

/// Word-level Levenshtein distance: unit-cost insert, delete, substitute.
std::size_t word_edit_distance(const TokenSeq& a, const TokenSeq& b);

/// Longest common (not necessarily contiguous) subsequence length.
std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

/// Multiset intersection of the n-gram windows: sum over distinct grams g of
/// min(count_a(g), count_b(g)). Throws std::invalid_argument if n < 1.
std::size_t common_ngram_count(const TokenSeq& a, const TokenSeq& b, std::size_t n);

struct OverlapSpan {
    std::size_t start_a;
    std::size_t start_b;
    std::size_t length;
    friend bool operator==(const OverlapSpan&, const OverlapSpan&) = default;
};

inline constexpr std::size_t kMinHighlightRun = 4;

/// Common contiguous token runs of at least `min_length` tokens, picked
/// greedily longest first (ties: smaller start_a, then smaller start_b),
/// never reusing a token position of either side. Sorted by start_a.
std::vector<OverlapSpan> highlight_overlap(const TokenSeq& a, const TokenSeq& b,
                                           std::size_t min_length = kMinHighlightRun);

}  // namespace lexgap
