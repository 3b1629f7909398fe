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

#include "lexgap/paragraph_id.hpp"

#include <charconv>

namespace lexgap {

std::optional<ParagraphId> ParagraphId::parse(std::string_view text)
{
    auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
        return std::nullopt;
    }
    std::string_view digits = text.substr(colon + 1);
    std::uint32_t number = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), number);
    if (ec != std::errc{} || end != digits.data() + digits.size() || number == 0) {
        return std::nullopt;
    }
    // Leading zeros or '+' would break the parse/render identity.
    if (digits.front() == '0') {
        return std::nullopt;
    }
    return ParagraphId{std::string(text.substr(0, colon)), number};
}

std::string ParagraphId::str() const { return celex + ":" + std::to_string(number); }

}  // namespace lexgap
