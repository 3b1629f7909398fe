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

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace lexgap {

/// Identity of one numbered paragraph: the decision's CELEX identifier and the
/// paragraph number inside it. Canonical text form is `<celex>:<number>`.
///
/// Ordering is (celex, number) with the number compared numerically, so
/// `X:9 < X:10`. Every tie-break in the engine uses this order.
struct ParagraphId {
    std::string celex;
    std::uint32_t number = 0;

    /// Parses `<celex>:<number>`; the split happens at the last ':'.
    /// Returns nullopt for an empty celex, a non-numeric or zero number.
    static std::optional<ParagraphId> parse(std::string_view text);

    [[nodiscard]] std::string str() const;

    friend auto operator<=>(const ParagraphId&, const ParagraphId&) = default;
    friend bool operator==(const ParagraphId&, const ParagraphId&) = default;
};

}  // namespace lexgap

template <>
struct std::hash<lexgap::ParagraphId> {
    std::size_t operator()(const lexgap::ParagraphId& id) const noexcept
    {
        std::size_t h = std::hash<std::string>{}(id.celex);
        return h ^ (std::hash<std::uint32_t>{}(id.number) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};
