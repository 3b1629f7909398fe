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
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "cli.hpp"
#include "lexgap/dense.hpp"
#include "lexgap/manifest.hpp"
#include "lexgap/tokenizer.hpp"
#include "synthetic.hpp"

using namespace lexgap;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Captured {
    int code;
    std::string out;
};

Captured cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "lexgap");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream buf;
    auto* old = std::cout.rdbuf(buf.rdbuf());
    int code = run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    return {code, buf.str()};
}

int binary(const std::string& args)
{
    int status = std::system((std::string(LEXGAP_BIN) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

json read_json(const std::string& path)
{
    std::ifstream in(path);
    return json::parse(in);
}

struct Workspace {
    std::string dir;
    std::string paragraphs;
    std::string citations;
    std::string split;
};

const Workspace& workspace()
{
    static Workspace ws = [] {
        Workspace w;
        w.dir = testing::scratch_dir("cli");
        w.paragraphs = w.dir + "/paragraphs.jsonl";
        w.citations = w.dir + "/citations.jsonl";
        w.split = w.dir + "/split";
        testing::make_synthetic({.seed = 23, .decisions = 80}).write(w.paragraphs, w.citations);
        REQUIRE(cli({"split", "--paragraphs", w.paragraphs, "--citations", w.citations, "--out", w.split}).code == 0);
        return w;
    }();
    return ws;
}

void write_random_embeddings(const std::string& path, const std::string& jsonl, std::uint64_t seed)
{
    std::ifstream in(jsonl);
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> dist;
    EmbeddingStore store(8);
    std::string line;
    while (std::getline(in, line)) {
        auto id = *ParagraphId::parse(json::parse(line)["id"].get<std::string>());
        std::vector<float> v(8);
        for (auto& x : v) {
            x = dist(rng);
        }
        store.add(id, v);
    }
    write_embeddings_file(path, store, EmbeddingFormat::ndjson);
}

}  // namespace

TEST_CASE("stats")
{
    const auto& w = workspace();
    auto r = cli({"stats", "--paragraphs", w.paragraphs, "--citations", w.citations});
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["unique_paragraphs"].get<int>() > 300);
    CHECK(j["duplicate_citations_collapsed"].get<int>() >= 2);
    CHECK(j.contains("mean_words_per_paragraph"));
}

TEST_CASE("split writes the task files")
{
    const auto& w = workspace();
    for (const char* f : {"task.qrels", "split-report.json", "train.jsonl", "valid.jsonl", "queries.jsonl",
                          "manifest.json", "task.qrels.manifest.json"}) {
        CAPTURE(f);
        CHECK(fs::exists(w.split + "/" + f));
    }
    auto report = read_json(w.split + "/split-report.json");
    CHECK(report["query_count"].get<int>() > 0);
    CHECK(report["boundaries"]["train_end_year"] == 2016);
    auto m = read_manifest(w.split + "/task.qrels");
    REQUIRE(m);
    CHECK(m->tokenizer == std::string(kTokenizerRuleId));
    CHECK(m->parameters["valid_end_year"] == 2018);
    CHECK(m->inputs.size() == 2);
}

TEST_CASE("lexical pipeline: index, retrieve, evaluate")
{
    const auto& w = workspace();
    for (const char* method : {"bm25", "tfidf1", "tfidf2"}) {
        CAPTURE(method);
        const std::string idx = w.dir + "/" + method + ".idx";
        const std::string run = w.dir + "/" + method + ".run";
        const std::string inline_metrics = w.dir + "/" + method + ".inline.json";
        const std::string metrics = w.dir + "/" + method + ".metrics.json";
        REQUIRE(cli({"index", "--method", method, "--pool", w.split, "--out", idx, "--vocab-k", "300"}).code == 0);
        REQUIRE(cli({"retrieve", "--index", idx, "--queries", w.split + "/queries.jsonl", "--out", run, "--qrels",
                     w.split + "/task.qrels", "--metrics-out", inline_metrics})
                    .code == 0);
        REQUIRE(cli({"evaluate", "--run", run, "--qrels", w.split + "/task.qrels", "--out", metrics, "--per-query",
                     w.dir + "/pq.csv"})
                    .code == 0);
        auto a = read_json(inline_metrics);
        auto b = read_json(metrics);
        CHECK(a == b);
        CHECK(b["recall@20"].get<double>() > 0.2);
        CHECK(fs::exists(run + ".manifest.json"));
        CHECK(fs::exists(metrics + ".manifest.json"));
        CHECK(read_manifest(run)->parameters["run_tag"] == method);
    }
}

TEST_CASE("depth truncation and thread independence")
{
    const auto& w = workspace();
    const std::string idx = w.dir + "/bm25-t.idx";
    REQUIRE(cli({"index", "--method", "bm25", "--pool", w.split, "--out", idx, "--threads", "3"}).code == 0);
    std::string first;
    for (const char* threads : {"1", "4"}) {
        const std::string run = w.dir + "/t" + threads + ".run";
        REQUIRE(cli({"retrieve", "--index", idx, "--queries", w.split + "/queries.jsonl", "--out", run, "--depth", "5",
                     "--threads", threads})
                    .code == 0);
        if (first.empty()) {
            first = slurp(run);
        }
        CHECK(slurp(run) == first);
    }
    std::istringstream lines(first);
    std::string line;
    std::getline(lines, line);
    CHECK(line.find(" Q0 ") != std::string::npos);
    CHECK(line.find(" 1 ") != std::string::npos);
    // depth 5 is too shallow for exhaustive metrics
    CHECK(cli({"evaluate", "--run", w.dir + "/t1.run", "--qrels", w.split + "/task.qrels", "--out",
               w.dir + "/shallow.json"})
              .code == 1);
}

TEST_CASE("dense pipeline and embedding conversion")
{
    const auto& w = workspace();
    const std::string pool_emb = w.dir + "/pool.ndjson";
    const std::string query_emb = w.dir + "/queries.ndjson";
    {
        // pool embeddings for train + valid, queries separately
        std::ofstream all(w.dir + "/pool.jsonl");
        all << slurp(w.split + "/train.jsonl") << slurp(w.split + "/valid.jsonl");
    }
    write_random_embeddings(pool_emb, w.dir + "/pool.jsonl", 1);
    write_random_embeddings(query_emb, w.split + "/queries.jsonl", 2);

    const std::string bin = w.dir + "/pool.emb1";
    const std::string back = w.dir + "/pool.back.ndjson";
    REQUIRE(cli({"convert-embeddings", "--in", pool_emb, "--out", bin, "--to", "emb1"}).code == 0);
    REQUIRE(cli({"convert-embeddings", "--in", bin, "--out", back, "--to", "ndjson"}).code == 0);
    CHECK(slurp(back) == slurp(pool_emb));

    const std::string run_a = w.dir + "/dense-a.run";
    const std::string run_b = w.dir + "/dense-b.run";
    REQUIRE(cli({"retrieve", "--embeddings", pool_emb, "--queries-embeddings", query_emb, "--pool", w.split, "--out",
                 run_a, "--qrels", w.split + "/task.qrels", "--metrics-out", w.dir + "/dense.json"})
                .code == 0);
    REQUIRE(cli({"retrieve", "--embeddings", bin, "--queries-embeddings", query_emb, "--out", run_b}).code == 0);
    // same pool and queries either way, so the rankings agree
    CHECK(slurp(run_a) == slurp(run_b));
    CHECK(read_json(w.dir + "/dense.json")["query_count"].get<int>() > 0);

    // query embeddings missing from the file
    std::ofstream(w.dir + "/one.ndjson") << R"({"id":"X:1","vector":[1,2,3,4,5,6,7,8]})" << '\n';
    CHECK(cli({"retrieve", "--embeddings", pool_emb, "--queries-embeddings", w.dir + "/one.ndjson", "--queries",
               w.split + "/queries.jsonl", "--out", w.dir + "/x.run"})
              .code == 1);
}

TEST_CASE("gap and highlight")
{
    const auto& w = workspace();
    const std::string idx = w.dir + "/gap.idx";
    REQUIRE(cli({"index", "--method", "bm25", "--pool", w.split, "--out", idx}).code == 0);
    REQUIRE(cli({"retrieve", "--index", idx, "--queries", w.split + "/queries.jsonl", "--out", w.dir + "/gap-a.run"})
                .code == 0);
    REQUIRE(cli({"index", "--method", "tfidf2", "--pool", w.split, "--out", w.dir + "/gap2.idx", "--vocab-k", "20"})
                .code == 0);
    REQUIRE(cli({"retrieve", "--index", w.dir + "/gap2.idx", "--queries", w.split + "/queries.jsonl", "--out",
                 w.dir + "/gap-b.run"})
                .code == 0);
    const std::string out = w.dir + "/gap";
    REQUIRE(cli({"gap", "--run-a", w.dir + "/gap-a.run", "--run-b", w.dir + "/gap-b.run", "--qrels",
                 w.split + "/task.qrels", "--metric", "recall@5", "--paragraphs", w.paragraphs, "--out", out})
                .code == 0);
    auto report = read_json(out + "/gap-report.json");
    CHECK(report["metric"] == "recall@5");
    CHECK(report["quantities"].size() == 12);
    CHECK(slurp(out + "/ngram-curves.csv").rfind("n,group,mean,std\n2,both_perfect,", 0) == 0);
    CHECK(fs::exists(out + "/manifest.json"));
    CHECK(cli({"gap", "--run-a", w.dir + "/gap-a.run", "--run-b", w.dir + "/gap-b.run", "--qrels",
               w.split + "/task.qrels", "--metric", "precision@3", "--paragraphs", w.paragraphs, "--out", out})
              .code == 1);

    auto h = cli({"highlight", "--text-a", "In that regard the Court has consistently held that it is for the national court",
                  "--text-b", "It must be recalled that the Court has consistently held that it is settled", "--json"});
    REQUIRE(h.code == 0);
    auto spans = json::parse(h.out);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0]["length"] == 8);
    CHECK(spans[0]["text"] == "the court has consistently held that it is");
    auto plain = cli({"highlight", "--text-a", "a b c d e", "--text-b", "x a b c d"});
    CHECK(plain.out == "a[0,4) b[1,5) 4: a b c d\n");
}

TEST_CASE("errors and exit codes")
{
    const auto& w = workspace();
    // A run missing a qrels query names the query.
    const std::string qrels = w.split + "/task.qrels";
    std::ifstream q(qrels);
    std::string first_query;
    q >> first_query;
    std::ofstream(w.dir + "/empty.run") << "";
    CHECK(cli({"evaluate", "--run", w.dir + "/empty.run", "--qrels", qrels, "--out", w.dir + "/e.json"}).code == 1);

    // Tokenizer mismatch between run and qrels manifests.
    const std::string run = w.dir + "/mismatch.run";
    std::ofstream(run) << first_query << " Q0 X:1 1 1.0 t\n";
    RunManifest m;
    m.tokenizer = "other-tokenizer/v9";
    m.timestamp = "2020-01-01T00:00:00Z";
    write_manifest(run, m);
    CHECK(cli({"evaluate", "--run", run, "--qrels", qrels, "--out", w.dir + "/e.json"}).code == 1);

    CHECK(binary("--version") == 0);
    CHECK(binary("frobnicate") == 2);
    CHECK(binary("stats --paragraphs x") == 2);
    CHECK(binary("stats --paragraphs x --citations y --bogus") == 2);
    CHECK(binary("stats --paragraphs /nonexistent --citations /nonexistent") == 1);
    CHECK(binary("split --paragraphs " + w.paragraphs + " --citations " + w.citations +
                 " --train-end 2018 --valid-end 2016 --out " + w.dir + "/bad") == 1);
    CHECK(binary("index --method bm42 --pool x --out y") == 2);
    CHECK(binary("retrieve --out x") == 2);
    CHECK(binary("evaluate --run " + w.dir + "/empty.run --qrels " + qrels + " --out " + w.dir + "/e.json") == 1);
}
