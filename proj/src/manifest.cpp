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

#include "lexgap/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "lexgap/error.hpp"

namespace lexgap {

void RunManifest::add_input(const std::string& path)
{
    inputs.push_back(InputDigest{path, sha256_file(path)});
}

std::string sha256_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read " + path);
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 unavailable");
    }
    std::vector<char> buf(1 << 16);
    while (in) {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (in.gcount() > 0) {
            EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
        }
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

std::string manifest_timestamp()
{
    using namespace std::chrono;
    sys_seconds now = floor<seconds>(system_clock::now());
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != nullptr && *end == '\0') {
            now = sys_seconds{seconds{v}};
        }
    }
    const auto day = floor<days>(now);
    const year_month_day ymd{day};
    const hh_mm_ss hms{now - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

nlohmann::json to_json(const RunManifest& m)
{
    auto inputs = nlohmann::json::array();
    for (const auto& d : m.inputs) {
        inputs.push_back({{"path", d.path}, {"sha256", d.sha256}});
    }
    return {{"command_line", m.command_line},
            {"inputs", inputs},
            {"tokenizer", m.tokenizer.empty() ? nlohmann::json(nullptr) : nlohmann::json(m.tokenizer)},
            {"parameters", m.parameters},
            {"tool_version", m.tool_version},
            {"timestamp", m.timestamp}};
}

RunManifest manifest_from_json(const nlohmann::json& j)
{
    try {
        RunManifest m;
        m.command_line = j.at("command_line").get<std::vector<std::string>>();
        for (const auto& d : j.at("inputs")) {
            m.inputs.push_back(InputDigest{d.at("path").get<std::string>(), d.at("sha256").get<std::string>()});
        }
        if (!j.at("tokenizer").is_null()) {
            m.tokenizer = j.at("tokenizer").get<std::string>();
        }
        m.parameters = j.at("parameters");
        m.tool_version = j.at("tool_version").get<std::string>();
        m.timestamp = j.at("timestamp").get<std::string>();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed manifest: ") + e.what());
    }
}

std::string manifest_path_for(const std::string& output)
{
    if (std::filesystem::is_directory(output)) {
        return (std::filesystem::path(output) / "manifest.json").string();
    }
    return output + ".manifest.json";
}

void write_manifest(const std::string& output, const RunManifest& m)
{
    const std::string path = manifest_path_for(output);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path);
    }
    out << to_json(m).dump(2) << '\n';
}

std::optional<RunManifest> read_manifest(const std::string& output)
{
    const std::string path = manifest_path_for(output);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return manifest_from_json(j);
}

}  // namespace lexgap
