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

#include "lexgap/tokenizer.hpp"

#include <stdexcept>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace lexgap {

namespace {

bool is_token_char(UChar32 c) { return u_isalpha(c) != 0 || u_isdigit(c) != 0; }

bool is_mark(UChar32 c)
{
    auto cat = u_charType(c);
    return cat == U_NON_SPACING_MARK || cat == U_COMBINING_SPACING_MARK;
}

template <typename OnToken>
void scan(std::string_view text, OnToken&& on_token)
{
    const auto* s = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    std::string current;
    bool open = false;
    int32_t i = 0;
    while (i < length) {
        UChar32 c = 0;
        U8_NEXT(s, i, length, c);
        bool keep = c >= 0 && (is_token_char(c) || (open && is_mark(c)));
        if (!keep) {
            if (open) {
                on_token(current);
                current.clear();
                open = false;
            }
            continue;
        }
        UChar32 lower = u_tolower(c);
        char buf[U8_MAX_LENGTH];
        int32_t n = 0;
        U8_APPEND_UNSAFE(reinterpret_cast<uint8_t*>(buf), n, lower);
        current.append(buf, static_cast<std::size_t>(n));
        open = true;
    }
    if (open) {
        on_token(current);
    }
}

}  // namespace

TokenSeq tokenize(std::string_view text)
{
    TokenSeq out;
    scan(text, [&](std::string& tok) { out.push_back(tok); });
    return out;
}

std::size_t count_tokens(std::string_view text)
{
    std::size_t n = 0;
    scan(text, [&](std::string&) { ++n; });
    return n;
}

std::vector<std::vector<std::string>> ngrams(const TokenSeq& tokens, std::size_t n)
{
    if (n < 1) {
        throw std::invalid_argument("ngrams: n must be >= 1");
    }
    std::vector<std::vector<std::string>> out;
    if (tokens.size() < n) {
        return out;
    }
    out.reserve(tokens.size() - n + 1);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        out.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                         tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
    }
    return out;
}

std::string render(const TokenSeq& tokens)
{
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i != 0) {
            out.push_back(' ');
        }
        out += tokens[i];
    }
    return out;
}

}  // namespace lexgap
