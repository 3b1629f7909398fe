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

#include "lexgap/splitter.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "lexgap/error.hpp"

namespace lexgap {

void SplitBoundaries::validate() const
{
    if (train_end_year >= valid_end_year) {
        throw ValidationError("split boundaries: train end year " + std::to_string(train_end_year) +
                              " must precede validation end year " + std::to_string(valid_end_year));
    }
}

const char* to_string(Split s)
{
    switch (s) {
    case Split::train: return "train";
    case Split::valid: return "valid";
    case Split::test: return "test";
    }
    return "?";
}

namespace {

Split assign(const Paragraph& p, const SplitBoundaries& b)
{
    int year = static_cast<int>(p.date.year());
    if (year <= b.train_end_year) {
        return Split::train;
    }
    if (year <= b.valid_end_year) {
        return Split::valid;
    }
    return Split::test;
}

}  // namespace

SplitCounts SplitSet::counts(Split s, const Corpus& corpus) const
{
    SplitCounts c;
    const auto& members = s == Split::train ? train : s == Split::valid ? valid : test;
    c.paragraphs = members.size();
    for (const auto& e : retained) {
        if (assign(corpus[e.citing], boundaries) == s) {
            ++c.citations;
        }
        if (assign(corpus[e.cited], boundaries) == s) {
            ++c.cited_citations;
        }
    }
    return c;
}

SplitSet temporal_split(const Corpus& corpus, const CitationGraph& graph, const SplitBoundaries& boundaries)
{
    boundaries.validate();
    SplitSet out;
    out.boundaries = boundaries;
    for (const auto& e : graph.edges()) {
        bool test_pair = assign(corpus[e.citing], boundaries) == Split::test &&
                         assign(corpus[e.cited], boundaries) == Split::test;
        (test_pair ? out.purged : out.retained).push_back(e);
    }
    for (DocIndex i = 0; i < corpus.size(); ++i) {
        if (graph.node_count() == corpus.size() && graph.in_degree(i) + graph.out_degree(i) == 0) {
            ++out.isolated_paragraphs;
            continue;
        }
        switch (assign(corpus[i], boundaries)) {
        case Split::train: out.train.push_back(i); break;
        case Split::valid: out.valid.push_back(i); break;
        case Split::test: out.test.push_back(i); break;
        }
    }
    return out;
}

std::size_t RetrievalTask::relevant_pairs() const
{
    std::size_t n = 0;
    for (const auto& q : queries) {
        n += q.relevant.size();
    }
    return n;
}

const TaskQuery* RetrievalTask::find(const ParagraphId& id) const
{
    auto it = std::lower_bound(queries.begin(), queries.end(), id,
                               [](const TaskQuery& q, const ParagraphId& v) { return q.id < v; });
    if (it == queries.end() || it->id != id) {
        return nullptr;
    }
    return &*it;
}

RetrievalTask build_task(const SplitSet& splits, const Corpus& corpus)
{
    RetrievalTask task;
    std::vector<std::vector<DocIndex>> cited(corpus.size());
    std::vector<bool> had_purged(corpus.size(), false);
    for (const auto& e : splits.retained) {
        cited[e.citing].push_back(e.cited);
    }
    for (const auto& e : splits.purged) {
        had_purged[e.citing] = true;
    }
    for (auto q : splits.test) {
        if (cited[q].empty()) {
            if (had_purged[q]) {
                ++task.dropped_queries;
            }
            continue;
        }
        TaskQuery tq;
        tq.id = corpus[q].id;
        std::sort(cited[q].begin(), cited[q].end());
        for (auto d : cited[q]) {
            tq.relevant.push_back(corpus[d].id);
        }
        task.queries.push_back(std::move(tq));
    }
    task.candidates.reserve(splits.train.size() + splits.valid.size());
    for (auto d : splits.train) {
        task.candidates.push_back(corpus[d].id);
    }
    for (auto d : splits.valid) {
        task.candidates.push_back(corpus[d].id);
    }
    std::sort(task.candidates.begin(), task.candidates.end());
    // splits.test is index-ordered, i.e. id-ordered already.
    return task;
}

void write_qrels(std::ostream& out, const RetrievalTask& task)
{
    for (const auto& q : task.queries) {
        const auto qid = q.id.str();
        for (const auto& d : q.relevant) {
            out << qid << " 0 " << d.str() << " 1\n";
        }
    }
}

RetrievalTask read_qrels(std::istream& in, const std::string& source)
{
    std::map<ParagraphId, std::vector<ParagraphId>> rel;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string qid;
        std::string iter;
        std::string did;
        int grade = 0;
        if (!(ls >> qid)) {
            continue;
        }
        if (!(ls >> iter >> did >> grade)) {
            throw RecordError(source, lineno, "", "expected '<query_id> <iter> <doc_id> <relevance>'");
        }
        auto q = ParagraphId::parse(qid);
        if (!q) {
            throw RecordError(source, lineno, "query_id", "not a paragraph id: " + qid);
        }
        auto d = ParagraphId::parse(did);
        if (!d) {
            throw RecordError(source, lineno, "doc_id", "not a paragraph id: " + did);
        }
        auto& list = rel[*q];
        if (grade > 0) {
            list.push_back(*d);
        }
    }
    RetrievalTask task;
    for (auto& [q, docs] : rel) {
        std::sort(docs.begin(), docs.end());
        docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
        if (docs.empty()) {
            continue;
        }
        task.queries.push_back({q, std::move(docs)});
    }
    return task;
}

RetrievalTask read_qrels_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    return read_qrels(in, path);
}

nlohmann::json split_report(const SplitSet& splits, const RetrievalTask& task, const Corpus& corpus)
{
    nlohmann::json j;
    for (auto s : {Split::train, Split::valid, Split::test}) {
        auto c = splits.counts(s, corpus);
        j["splits"][to_string(s)] = {
            {"paragraphs", c.paragraphs},
            {"citations", c.citations},
            {"cited_citations", c.cited_citations},
        };
    }
    j["boundaries"] = {{"train_end_year", splits.boundaries.train_end_year},
                       {"valid_end_year", splits.boundaries.valid_end_year}};
    j["retained_citations"] = splits.retained.size();
    j["purged_citations"] = splits.purged.size();
    j["isolated_paragraphs"] = splits.isolated_paragraphs;
    j["query_count"] = task.queries.size();
    j["relevant_pairs"] = task.relevant_pairs();
    j["dropped_queries"] = task.dropped_queries;
    j["candidate_count"] = task.candidates.size();
    return j;
}

}  // namespace lexgap
