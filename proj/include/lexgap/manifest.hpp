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

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace lexgap {

inline constexpr const char* kToolVersion = "0.1.0";

struct InputDigest {
    std::string path;
    std::string sha256;  // lowercase hex
};

/// Provenance record written beside every output file.
struct RunManifest {
    std::vector<std::string> command_line;
    std::vector<InputDigest> inputs;
    std::string tokenizer;                       // rule id, empty when no text was tokenized
    nlohmann::json parameters = nlohmann::json::object();
    std::string tool_version = kToolVersion;
    std::string timestamp;                       // ISO 8601 UTC

    /// Digests `path` and appends it to inputs.
    void add_input(const std::string& path);
};

/// Hex SHA-256 of a file's bytes. Throws ValidationError if it cannot be read.
std::string sha256_file(const std::string& path);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ. Honours SOURCE_DATE_EPOCH when set.
std::string manifest_timestamp();

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

/// `<output>.manifest.json` for files, `<output>/manifest.json` for directories.
std::string manifest_path_for(const std::string& output);

void write_manifest(const std::string& output, const RunManifest& m);
/// Absent when no manifest sits beside `output`; ValidationError if it is malformed.
std::optional<RunManifest> read_manifest(const std::string& output);

}  // namespace lexgap
