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

#include "lexgap/text_overlap.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace lexgap {

namespace {

// Maps both sequences onto shared integer ids so the DP loops compare ints.
struct Interned {
    std::vector<std::uint32_t> a;
    std::vector<std::uint32_t> b;
};

Interned intern(const TokenSeq& a, const TokenSeq& b)
{
    std::unordered_map<std::string_view, std::uint32_t> ids;
    auto id = [&](const std::string& t) {
        return ids.emplace(t, static_cast<std::uint32_t>(ids.size())).first->second;
    };
    Interned out;
    out.a.reserve(a.size());
    out.b.reserve(b.size());
    for (const auto& t : a) {
        out.a.push_back(id(t));
    }
    for (const auto& t : b) {
        out.b.push_back(id(t));
    }
    return out;
}

}  // namespace

std::size_t word_edit_distance(const TokenSeq& a, const TokenSeq& b)
{
    auto s = intern(a, b);
    std::vector<std::size_t> prev(s.b.size() + 1);
    std::vector<std::size_t> cur(s.b.size() + 1);
    for (std::size_t j = 0; j <= s.b.size(); ++j) {
        prev[j] = j;
    }
    for (std::size_t i = 1; i <= s.a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= s.b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (s.a[i - 1] == s.b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[s.b.size()];
}

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b)
{
    auto s = intern(a, b);
    std::vector<std::size_t> prev(s.b.size() + 1, 0);
    std::vector<std::size_t> cur(s.b.size() + 1, 0);
    for (std::size_t i = 1; i <= s.a.size(); ++i) {
        for (std::size_t j = 1; j <= s.b.size(); ++j) {
            cur[j] = s.a[i - 1] == s.b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[s.b.size()];
}

std::size_t common_ngram_count(const TokenSeq& a, const TokenSeq& b, std::size_t n)
{
    if (n < 1) {
        throw std::invalid_argument("common_ngram_count: n must be >= 1");
    }
    if (a.size() < n || b.size() < n) {
        return 0;
    }
    auto s = intern(a, b);
    std::map<std::vector<std::uint32_t>, std::size_t> counts;
    for (std::size_t i = 0; i + n <= s.a.size(); ++i) {
        ++counts[std::vector<std::uint32_t>(s.a.begin() + static_cast<std::ptrdiff_t>(i),
                                            s.a.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    std::size_t common = 0;
    std::vector<std::uint32_t> window(n);
    for (std::size_t i = 0; i + n <= s.b.size(); ++i) {
        std::copy_n(s.b.begin() + static_cast<std::ptrdiff_t>(i), n, window.begin());
        auto it = counts.find(window);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++common;
        }
    }
    return common;
}

std::vector<OverlapSpan> highlight_overlap(const TokenSeq& a, const TokenSeq& b, std::size_t min_length)
{
    auto s = intern(a, b);
    std::vector<bool> used_a(s.a.size(), false);
    std::vector<bool> used_b(s.b.size(), false);
    std::vector<OverlapSpan> spans;
    std::vector<std::size_t> prev(s.b.size() + 1);
    std::vector<std::size_t> cur(s.b.size() + 1);
    min_length = std::max<std::size_t>(min_length, 1);
    for (;;) {
        OverlapSpan best{0, 0, 0};
        std::fill(prev.begin(), prev.end(), 0);
        for (std::size_t i = 1; i <= s.a.size(); ++i) {
            cur[0] = 0;
            for (std::size_t j = 1; j <= s.b.size(); ++j) {
                const bool match = !used_a[i - 1] && !used_b[j - 1] && s.a[i - 1] == s.b[j - 1];
                cur[j] = match ? prev[j - 1] + 1 : 0;
                if (cur[j] == 0) {
                    continue;
                }
                OverlapSpan cand{i - cur[j], j - cur[j], cur[j]};
                if (cand.length > best.length ||
                    (cand.length == best.length &&
                     (cand.start_a < best.start_a || (cand.start_a == best.start_a && cand.start_b < best.start_b)))) {
                    best = cand;
                }
            }
            std::swap(prev, cur);
        }
        if (best.length < min_length) {
            break;
        }
        for (std::size_t k = 0; k < best.length; ++k) {
            used_a[best.start_a + k] = true;
            used_b[best.start_b + k] = true;
        }
        spans.push_back(best);
    }
    std::sort(spans.begin(), spans.end(),
              [](const OverlapSpan& x, const OverlapSpan& y) { return x.start_a < y.start_a; });
    return spans;
}

}  // namespace lexgap
