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

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "lexgap/bm25.hpp"
#include "lexgap/tfidf.hpp"

namespace lexgap {

/// Magic that opens every lexical index snapshot; the trailing digit is the
/// format version.
inline constexpr std::string_view kSnapshotMagic = "LSBX1";

using LexicalIndex = std::variant<Bm25Index, TfidfIndex>;

/// Writes a snapshot that reloads to an index with bitwise identical scores.
void save_snapshot(std::ostream& out, const LexicalIndex& index);
void save_snapshot_file(const std::string& path, const LexicalIndex& index);

/// Throws ValidationError on a wrong magic, unknown method tag or truncation.
LexicalIndex load_snapshot(std::istream& in, const std::string& source = "snapshot");
LexicalIndex load_snapshot_file(const std::string& path);

/// "bm25", "tfidf1", "tfidf2", ... for the run tag and manifest.
std::string method_name(const LexicalIndex& index);

}  // namespace lexgap
