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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexgap/bm25.hpp"
#include "lexgap/corpus.hpp"
#include "lexgap/dense.hpp"
#include "lexgap/error.hpp"
#include "lexgap/evaluation.hpp"
#include "lexgap/gap.hpp"
#include "lexgap/lexical_snapshot.hpp"
#include "lexgap/manifest.hpp"
#include "lexgap/retrieval.hpp"
#include "lexgap/simd/dot.hpp"
#include "lexgap/splitter.hpp"
#include "lexgap/text_overlap.hpp"
#include "lexgap/tfidf.hpp"
#include "lexgap/tokenizer.hpp"

namespace lexgap {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path);
    }
    return out;
}

void write_json_file(const std::string& path, const json& j)
{
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

RunManifest new_manifest(const std::vector<std::string>& argv)
{
    RunManifest m;
    m.command_line = argv;
    m.timestamp = manifest_timestamp();
    return m;
}

Corpus read_pool(const std::string& dir)
{
    std::vector<Paragraph> all;
    for (const char* name : {"train.jsonl", "valid.jsonl"}) {
        Corpus part = ingest_paragraphs_file((fs::path(dir) / name).string());
        all.insert(all.end(), part.paragraphs().begin(), part.paragraphs().end());
    }
    return Corpus(std::move(all));
}

std::vector<ParagraphId> ids_of(const Corpus& corpus)
{
    std::vector<ParagraphId> ids;
    ids.reserve(corpus.size());
    for (const auto& p : corpus.paragraphs()) {
        ids.push_back(p.id);
    }
    return ids;
}

void check_tokenizers(const std::string& run_path, const std::string& qrels_path)
{
    auto run_m = read_manifest(run_path);
    auto qrels_m = read_manifest(qrels_path);
    if (run_m && qrels_m && !run_m->tokenizer.empty() && !qrels_m->tokenizer.empty() &&
        run_m->tokenizer != qrels_m->tokenizer) {
        throw ValidationError("tokenizer mismatch: run " + run_path + " uses '" + run_m->tokenizer + "' but qrels " +
                              qrels_path + " uses '" + qrels_m->tokenizer + "'");
    }
}

struct Context {
    std::vector<std::string> argv;
    unsigned threads = 0;
};

// stats ---------------------------------------------------------------------

struct StatsArgs {
    std::string paragraphs;
    std::string citations;
    std::string out;
};

void cmd_stats(const Context& ctx, const StatsArgs& a)
{
    Corpus corpus = ingest_paragraphs_file(a.paragraphs);
    CitationGraph graph = ingest_citations_file(a.citations, corpus);
    json report = to_json(corpus_stats(corpus, graph));
    if (a.out.empty()) {
        std::cout << report.dump(2) << '\n';
        return;
    }
    write_json_file(a.out, report);
    RunManifest m = new_manifest(ctx.argv);
    m.add_input(a.paragraphs);
    m.add_input(a.citations);
    m.tokenizer = kTokenizerRuleId;
    write_manifest(a.out, m);
}

// split ---------------------------------------------------------------------

struct SplitArgs {
    std::string paragraphs;
    std::string citations;
    SplitBoundaries boundaries;
    std::string out;
};

void cmd_split(const Context& ctx, const SplitArgs& a)
{
    a.boundaries.validate();
    Corpus corpus = ingest_paragraphs_file(a.paragraphs);
    CitationGraph graph = ingest_citations_file(a.citations, corpus);
    SplitSet splits = temporal_split(corpus, graph, a.boundaries);
    RetrievalTask task = build_task(splits, corpus);

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    {
        auto out = open_out((dir / "task.qrels").string());
        write_qrels(out, task);
    }
    write_json_file((dir / "split-report.json").string(), split_report(splits, task, corpus));
    {
        auto out = open_out((dir / "train.jsonl").string());
        write_paragraphs(out, corpus, splits.train);
    }
    {
        auto out = open_out((dir / "valid.jsonl").string());
        write_paragraphs(out, corpus, splits.valid);
    }
    {
        std::vector<DocIndex> queries;
        queries.reserve(task.queries.size());
        for (const auto& q : task.queries) {
            queries.push_back(corpus.at(q.id));
        }
        auto out = open_out((dir / "queries.jsonl").string());
        write_paragraphs(out, corpus, queries);
    }

    RunManifest m = new_manifest(ctx.argv);
    m.add_input(a.paragraphs);
    m.add_input(a.citations);
    m.tokenizer = kTokenizerRuleId;
    m.parameters = {{"train_end_year", a.boundaries.train_end_year},
                    {"valid_end_year", a.boundaries.valid_end_year}};
    write_manifest(a.out, m);
    write_manifest((dir / "task.qrels").string(), m);
}

// index ---------------------------------------------------------------------

struct IndexArgs {
    std::string method;
    std::string pool;
    std::string out;
    std::size_t vocab_k = 5000;
    Bm25Params bm25;
};

void cmd_index(const Context& ctx, const IndexArgs& a)
{
    Corpus pool = read_pool(a.pool);
    const std::vector<ParagraphId> ids = ids_of(pool);
    RunManifest m = new_manifest(ctx.argv);
    m.add_input((fs::path(a.pool) / "train.jsonl").string());
    m.add_input((fs::path(a.pool) / "valid.jsonl").string());
    m.tokenizer = kTokenizerRuleId;

    std::optional<LexicalIndex> index;
    if (a.method == "bm25") {
        a.bm25.validate();
        index = Bm25Index::build(pool, ids, a.bm25, ctx.threads);
        m.parameters = {{"method", "bm25"}, {"k1", a.bm25.k1}, {"b", a.bm25.b}, {"idf_floor0", a.bm25.idf_floor0}};
    } else {
        const std::size_t n = a.method == "tfidf1" ? 1 : 2;
        if (a.vocab_k == 0) {
            throw ValidationError("--vocab-k must be positive");
        }
        Corpus train = ingest_paragraphs_file((fs::path(a.pool) / "train.jsonl").string());
        std::vector<TokenSeq> train_docs;
        train_docs.reserve(train.size());
        for (const auto& p : train.paragraphs()) {
            train_docs.push_back(tokenize(p.text));
        }
        NGramVocab vocab = build_tfidf_vocab(train_docs, n, a.vocab_k);
        index = TfidfIndex::build(std::move(vocab), pool, ids, ctx.threads);
        m.parameters = {{"method", a.method}, {"n", n}, {"vocab_k", a.vocab_k}};
    }
    save_snapshot_file(a.out, *index);
    write_manifest(a.out, m);
}

// retrieve ------------------------------------------------------------------

struct RetrieveArgs {
    std::string index;
    std::string embeddings;
    std::string query_embeddings;
    std::string pool;
    std::string queries;
    std::string out;
    std::optional<std::size_t> depth;
    std::string qrels;
    std::string metrics_out;
    std::string run_tag;
};

void cmd_retrieve(const Context& ctx, const RetrieveArgs& a)
{
    const bool lexical = !a.index.empty();
    if (lexical == !a.embeddings.empty()) {
        throw CLI::ValidationError("retrieve", "give exactly one of --index or --embeddings");
    }
    if (lexical && a.queries.empty()) {
        throw CLI::ValidationError("retrieve", "--queries is required with --index");
    }
    if (!lexical && a.query_embeddings.empty()) {
        throw CLI::ValidationError("retrieve", "--queries-embeddings is required with --embeddings");
    }

    RunManifest m = new_manifest(ctx.argv);
    std::optional<RetrievalTask> task;
    if (!a.qrels.empty()) {
        task = read_qrels_file(a.qrels);
        m.add_input(a.qrels);
    }
    RetrievalOptions options;
    options.threads = ctx.threads;
    options.depth = a.depth.value_or(std::numeric_limits<std::size_t>::max());

    std::vector<ParagraphId> pool;
    std::vector<ParagraphId> queries;
    PoolScorer scorer;

    std::optional<LexicalIndex> index;
    std::optional<Corpus> query_corpus;
    std::optional<EmbeddingStore> doc_store;
    std::optional<EmbeddingStore> query_store;
    std::optional<DenseRanker> ranker;

    if (lexical) {
        index = load_snapshot_file(a.index);
        query_corpus = ingest_paragraphs_file(a.queries);
        m.add_input(a.index);
        m.add_input(a.queries);
        m.tokenizer = kTokenizerRuleId;
        options.run_tag = a.run_tag.empty() ? method_name(*index) : a.run_tag;
        pool = std::visit([](const auto& idx) { return idx.doc_ids(); }, *index);
        queries = ids_of(*query_corpus);
        scorer = [&](std::size_t i) {
            TokenSeq q = tokenize((*query_corpus)[static_cast<DocIndex>(i)].text);
            return std::visit([&](const auto& idx) { return idx.score_all(q); }, *index);
        };
    } else {
        doc_store = read_embeddings_file(a.embeddings);
        query_store = read_embeddings_file(a.query_embeddings);
        m.add_input(a.embeddings);
        m.add_input(a.query_embeddings);
        if (doc_store->dim() != query_store->dim()) {
            throw ValidationError("embedding dimensions differ: " + std::to_string(doc_store->dim()) + " vs " +
                                  std::to_string(query_store->dim()));
        }
        if (!a.pool.empty()) {
            pool = ids_of(read_pool(a.pool));
            m.add_input((fs::path(a.pool) / "train.jsonl").string());
            m.add_input((fs::path(a.pool) / "valid.jsonl").string());
        } else {
            pool = doc_store->ids();
            std::sort(pool.begin(), pool.end());
        }
        if (!a.queries.empty()) {
            queries = ids_of(ingest_paragraphs_file(a.queries));
            m.add_input(a.queries);
        } else {
            queries = query_store->ids();
            std::sort(queries.begin(), queries.end());
        }
        std::vector<std::size_t> rows;
        rows.reserve(queries.size());
        for (const auto& q : queries) {
            auto row = query_store->find(q);
            if (!row) {
                throw ValidationError("query " + q.str() + " has no embedding in " + a.query_embeddings);
            }
            rows.push_back(*row);
        }
        ranker.emplace(*doc_store, pool);
        options.run_tag = a.run_tag.empty() ? "dense-" + doc_store->model_tag() : a.run_tag;
        scorer = [&, rows = std::move(rows)](std::size_t i) { return ranker->score_all(query_store->vector(rows[i])); };
        m.parameters["simd"] = simd::isa_name(simd::active_isa());
    }
    m.parameters["run_tag"] = options.run_tag;
    m.parameters["depth"] = a.depth ? json(*a.depth) : json("full");

    auto run_out = open_out(a.out);
    RetrievalResult result =
        run_retrieval(pool, queries, scorer, options, task ? &*task : nullptr, &run_out);
    run_out.close();
    write_manifest(a.out, m);

    if (result.metrics) {
        json metrics = to_json(*result.metrics);
        if (a.metrics_out.empty()) {
            std::cout << metrics.dump(2) << '\n';
        } else {
            write_json_file(a.metrics_out, metrics);
            write_manifest(a.metrics_out, m);
        }
    }
}

// evaluate ------------------------------------------------------------------

struct EvaluateArgs {
    std::string run;
    std::string qrels;
    std::string out;
    std::string per_query;
};

void cmd_evaluate(const Context& ctx, const EvaluateArgs& a)
{
    check_tokenizers(a.run, a.qrels);
    RunRanking run = read_run_file(a.run);
    RetrievalTask task = read_qrels_file(a.qrels);
    MetricsReport report = evaluate_run(task, run);
    write_json_file(a.out, to_json(report));

    RunManifest m = new_manifest(ctx.argv);
    m.add_input(a.run);
    m.add_input(a.qrels);
    if (auto rm = read_manifest(a.run)) {
        m.tokenizer = rm->tokenizer;
    }
    write_manifest(a.out, m);
    if (!a.per_query.empty()) {
        auto out = open_out(a.per_query);
        write_per_query_csv(out, report);
        out.close();
        write_manifest(a.per_query, m);
    }
}

// gap -----------------------------------------------------------------------

struct GapArgs {
    std::string run_a;
    std::string run_b;
    std::string qrels;
    std::string metric = "recall@5";
    std::string paragraphs;
    std::string out;
};

void cmd_gap(const Context& ctx, const GapArgs& a)
{
    MetricSpec metric = MetricSpec::parse(a.metric);
    check_tokenizers(a.run_a, a.qrels);
    check_tokenizers(a.run_b, a.qrels);
    RunRanking run_a = read_run_file(a.run_a);
    RunRanking run_b = read_run_file(a.run_b);
    RetrievalTask task = read_qrels_file(a.qrels);
    Corpus corpus = ingest_paragraphs_file(a.paragraphs);
    GapReport report = gap_report(task, run_a, run_b, metric, corpus, ctx.threads);
    for (const auto& n : report.notices) {
        std::cerr << "notice: " << n << '\n';
    }

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    write_json_file((dir / "gap-report.json").string(), to_json(report));
    {
        auto out = open_out((dir / "ngram-curves.csv").string());
        write_ngram_curves(out, report);
    }
    RunManifest m = new_manifest(ctx.argv);
    m.add_input(a.run_a);
    m.add_input(a.run_b);
    m.add_input(a.qrels);
    m.add_input(a.paragraphs);
    m.tokenizer = kTokenizerRuleId;
    m.parameters = {{"metric", metric.name()}};
    write_manifest(a.out, m);
}

// highlight -----------------------------------------------------------------

struct HighlightArgs {
    std::string text_a;
    std::string text_b;
    std::string id_a;
    std::string id_b;
    std::string paragraphs;
    std::size_t min_length = kMinHighlightRun;
    bool as_json = false;
};

std::string parse_or_throw_text(const Corpus& corpus, const std::string& id)
{
    auto pid = ParagraphId::parse(id);
    if (!pid) {
        throw ValidationError("malformed paragraph id '" + id + "'");
    }
    return corpus.get(*pid).text;
}

void cmd_highlight(const HighlightArgs& a)
{
    std::string text_a = a.text_a;
    std::string text_b = a.text_b;
    if (!a.id_a.empty() || !a.id_b.empty()) {
        if (a.id_a.empty() || a.id_b.empty() || a.paragraphs.empty()) {
            throw CLI::ValidationError("highlight", "--id-a and --id-b need each other and --paragraphs");
        }
        Corpus corpus = ingest_paragraphs_file(a.paragraphs);
        text_a = parse_or_throw_text(corpus, a.id_a);
        text_b = parse_or_throw_text(corpus, a.id_b);
    }
    const TokenSeq ta = tokenize(text_a);
    const TokenSeq tb = tokenize(text_b);
    const auto spans = highlight_overlap(ta, tb, a.min_length);
    auto slice = [](const TokenSeq& t, std::size_t start, std::size_t len) {
        return render(TokenSeq(t.begin() + static_cast<std::ptrdiff_t>(start),
                               t.begin() + static_cast<std::ptrdiff_t>(start + len)));
    };
    if (a.as_json) {
        json arr = json::array();
        for (const auto& s : spans) {
            arr.push_back({{"start_a", s.start_a},
                           {"start_b", s.start_b},
                           {"length", s.length},
                           {"text", slice(ta, s.start_a, s.length)}});
        }
        std::cout << arr.dump(2) << '\n';
        return;
    }
    for (const auto& s : spans) {
        std::cout << "a[" << s.start_a << ',' << s.start_a + s.length << ") b[" << s.start_b << ','
                  << s.start_b + s.length << ") " << s.length << ": " << slice(ta, s.start_a, s.length) << '\n';
    }
}

// convert-embeddings --------------------------------------------------------

struct ConvertArgs {
    std::string in;
    std::string out;
    EmbeddingFormat to = EmbeddingFormat::emb1;
};

void cmd_convert(const Context& ctx, const ConvertArgs& a)
{
    EmbeddingStore store = read_embeddings_file(a.in);
    write_embeddings_file(a.out, store, a.to);
    RunManifest m = new_manifest(ctx.argv);
    m.add_input(a.in);
    m.parameters = {{"format", a.to == EmbeddingFormat::emb1 ? "emb1" : "ndjson"}, {"dim", store.dim()}};
    write_manifest(a.out, m);
}

}  // namespace

int run_cli(int argc, const char* const* argv)
{
    Context ctx;
    ctx.argv.assign(argv, argv + argc);

    CLI::App app{"Lexical and dense citation retrieval evaluation"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    auto add_threads = [&](CLI::App* sub) {
        sub->add_option("--threads", ctx.threads, "Worker threads (0: all cores); results do not depend on it")
            ->check(CLI::NonNegativeNumber);
    };

    StatsArgs stats;
    auto* s_stats = app.add_subcommand("stats", "Corpus and citation-graph statistics as JSON");
    s_stats->add_option("--paragraphs", stats.paragraphs)->required();
    s_stats->add_option("--citations", stats.citations)->required();
    s_stats->add_option("--out", stats.out, "Write here instead of stdout");

    SplitArgs split;
    auto* s_split = app.add_subcommand("split", "Temporal split into qrels, pool files and a split report");
    s_split->add_option("--paragraphs", split.paragraphs)->required();
    s_split->add_option("--citations", split.citations)->required();
    s_split->add_option("--train-end", split.boundaries.train_end_year)->capture_default_str();
    s_split->add_option("--valid-end", split.boundaries.valid_end_year)->capture_default_str();
    s_split->add_option("--out", split.out, "Output directory")->required();

    IndexArgs index;
    auto* s_index = app.add_subcommand("index", "Build a lexical index over the train+valid pool");
    s_index->add_option("--method", index.method)->required()->check(CLI::IsMember({"bm25", "tfidf1", "tfidf2"}));
    s_index->add_option("--pool", index.pool, "Directory written by split")->required();
    s_index->add_option("--out", index.out)->required();
    s_index->add_option("--vocab-k", index.vocab_k)->capture_default_str();
    s_index->add_option("--k1", index.bm25.k1)->capture_default_str();
    s_index->add_option("--b", index.bm25.b)->capture_default_str();
    s_index->add_flag("--idf-floor0", index.bm25.idf_floor0, "Clamp negative BM25 idf to 0");
    add_threads(s_index);

    RetrieveArgs retrieve;
    auto* s_retrieve = app.add_subcommand("retrieve", "Rank the pool for every query and write a TREC run");
    s_retrieve->add_option("--index", retrieve.index, "Lexical index snapshot");
    s_retrieve->add_option("--embeddings", retrieve.embeddings, "Candidate embeddings (NDJSON or EMB1)");
    s_retrieve->add_option("--queries-embeddings", retrieve.query_embeddings);
    s_retrieve->add_option("--pool", retrieve.pool, "Restrict dense candidates to a split directory's pool");
    s_retrieve->add_option("--queries", retrieve.queries, "Query paragraphs (jsonl)");
    s_retrieve->add_option("--depth", retrieve.depth, "Rows written per query (default: whole pool)")
        ->check(CLI::PositiveNumber);
    s_retrieve->add_option("--out", retrieve.out)->required();
    s_retrieve->add_option("--qrels", retrieve.qrels, "Also score the exhaustive rankings");
    s_retrieve->add_option("--metrics-out", retrieve.metrics_out)->needs("--qrels");
    s_retrieve->add_option("--run-tag", retrieve.run_tag);
    add_threads(s_retrieve);

    EvaluateArgs evaluate;
    auto* s_evaluate = app.add_subcommand("evaluate", "Score a TREC run against qrels");
    s_evaluate->add_option("--run", evaluate.run)->required();
    s_evaluate->add_option("--qrels", evaluate.qrels)->required();
    s_evaluate->add_option("--out", evaluate.out)->required();
    s_evaluate->add_option("--per-query", evaluate.per_query, "Per-query metrics CSV");

    GapArgs gap;
    auto* s_gap = app.add_subcommand("gap", "Overlap statistics behind the gap between two runs");
    s_gap->add_option("--run-a", gap.run_a)->required();
    s_gap->add_option("--run-b", gap.run_b)->required();
    s_gap->add_option("--qrels", gap.qrels)->required();
    s_gap->add_option("--metric", gap.metric)->capture_default_str();
    s_gap->add_option("--paragraphs", gap.paragraphs)->required();
    s_gap->add_option("--out", gap.out, "Output directory")->required();
    add_threads(s_gap);

    HighlightArgs highlight;
    auto* s_highlight = app.add_subcommand("highlight", "Common token runs between two texts");
    s_highlight->add_option("--text-a", highlight.text_a);
    s_highlight->add_option("--text-b", highlight.text_b);
    s_highlight->add_option("--id-a", highlight.id_a);
    s_highlight->add_option("--id-b", highlight.id_b);
    s_highlight->add_option("--paragraphs", highlight.paragraphs);
    s_highlight->add_option("--min-length", highlight.min_length)->capture_default_str()->check(CLI::PositiveNumber);
    s_highlight->add_flag("--json", highlight.as_json);

    ConvertArgs convert;
    std::string convert_to;
    auto* s_convert = app.add_subcommand("convert-embeddings", "Convert between NDJSON and EMB1 embeddings");
    s_convert->add_option("--in", convert.in)->required();
    s_convert->add_option("--out", convert.out)->required();
    s_convert->add_option("--to", convert_to)->required()->check(CLI::IsMember({"ndjson", "emb1"}));

    try {
        app.parse(argc, argv);
        if (s_stats->parsed()) {
            cmd_stats(ctx, stats);
        } else if (s_split->parsed()) {
            cmd_split(ctx, split);
        } else if (s_index->parsed()) {
            cmd_index(ctx, index);
        } else if (s_retrieve->parsed()) {
            cmd_retrieve(ctx, retrieve);
        } else if (s_evaluate->parsed()) {
            cmd_evaluate(ctx, evaluate);
        } else if (s_gap->parsed()) {
            cmd_gap(ctx, gap);
        } else if (s_highlight->parsed()) {
            cmd_highlight(highlight);
        } else if (s_convert->parsed()) {
            convert.to = convert_to == "ndjson" ? EmbeddingFormat::ndjson : EmbeddingFormat::emb1;
            cmd_convert(ctx, convert);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const lexgap::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace lexgap
