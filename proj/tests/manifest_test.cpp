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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "lexgap/error.hpp"
#include "lexgap/manifest.hpp"
#include "synthetic.hpp"

using namespace lexgap;

TEST_CASE("sha256 of known content")
{
    auto dir = testing::scratch_dir("manifest-sha");
    const std::string path = dir + "/abc.txt";
    std::ofstream(path) << "abc";
    CHECK(sha256_file(path) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    std::ofstream(dir + "/empty.txt");
    CHECK(sha256_file(dir + "/empty.txt") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK_THROWS_AS(sha256_file(dir + "/missing"), ValidationError);
}

TEST_CASE("timestamp honours SOURCE_DATE_EPOCH")
{
    setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
    CHECK(manifest_timestamp() == "2023-11-14T22:13:20Z");
    unsetenv("SOURCE_DATE_EPOCH");
    CHECK(manifest_timestamp().size() == 20);
}

TEST_CASE("manifests sit beside files and inside directories")
{
    auto dir = testing::scratch_dir("manifest-io");
    const std::string file = dir + "/run.txt";
    std::ofstream(file) << "x";
    RunManifest m;
    m.command_line = {"lexgap", "retrieve"};
    m.add_input(file);
    m.tokenizer = "tok/v1";
    m.parameters = {{"k1", 1.2}};
    m.timestamp = "2020-01-01T00:00:00Z";
    write_manifest(file, m);
    CHECK(std::filesystem::exists(file + ".manifest.json"));
    auto back = read_manifest(file);
    REQUIRE(back);
    CHECK(back->tokenizer == "tok/v1");
    CHECK(back->inputs.size() == 1);
    CHECK(back->inputs[0].sha256 == sha256_file(file));
    CHECK(to_json(*back) == to_json(m));

    write_manifest(dir, m);
    CHECK(std::filesystem::exists(dir + "/manifest.json"));
    CHECK_FALSE(read_manifest(dir + "/nothing-here").has_value());

    std::ofstream(dir + "/bad.txt.manifest.json") << "{\"inputs\": 3}";
    CHECK_THROWS_AS(read_manifest(dir + "/bad.txt"), ValidationError);
}
