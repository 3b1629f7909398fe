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

#include "lexgap/ranking.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "lexgap/error.hpp"

namespace lexgap {

const QueryRun* RunRanking::find(const ParagraphId& query) const
{
    auto it = std::lower_bound(queries.begin(), queries.end(), query,
                               [](const QueryRun& q, const ParagraphId& v) { return q.query < v; });
    if (it == queries.end() || it->query != query) {
        return nullptr;
    }
    return &*it;
}

std::size_t PoolScores::rank_of(std::size_t pos) const
{
    const double s = scores_[pos];
    std::size_t ahead = 0;
    for (std::size_t j = 0; j < scores_.size(); ++j) {
        ahead += static_cast<std::size_t>(scores_[j] > s || (scores_[j] == s && j < pos));
    }
    return ahead + 1;
}

std::vector<std::uint32_t> PoolScores::top_k(std::size_t k) const
{
    std::vector<std::uint32_t> order(scores_.size());
    std::iota(order.begin(), order.end(), 0U);
    k = std::min(k, order.size());
    auto before = [&](std::uint32_t a, std::uint32_t b) {
        if (scores_[a] != scores_[b]) {
            return scores_[a] > scores_[b];
        }
        return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), before);
    order.resize(k);
    return order;
}

void write_run(std::ostream& out, const QueryRun& q, const std::string& run_tag, std::size_t depth)
{
    const auto qid = q.query.str();
    const std::size_t n = std::min(depth, q.rows.size());
    char score[64];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(score, sizeof score, "%.6f", q.rows[i].score);
        out << qid << " Q0 " << q.rows[i].doc.str() << ' ' << (i + 1) << ' ' << score << ' ' << run_tag << '\n';
    }
}

void write_run(std::ostream& out, const RunRanking& run, std::size_t depth)
{
    for (const auto& q : run.queries) {
        write_run(out, q, run.run_tag, depth);
    }
}

RunRanking read_run(std::istream& in, const std::string& source)
{
    struct Row {
        std::size_t rank;
        ScoredDoc doc;
        std::size_t line;
    };
    std::map<ParagraphId, std::vector<Row>> rows;
    RunRanking run;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string qid;
        std::string q0;
        std::string did;
        std::string rank_text;
        std::string score_text;
        std::string tag;
        if (!(ls >> qid)) {
            continue;
        }
        if (!(ls >> q0 >> did >> rank_text >> score_text >> tag)) {
            throw RecordError(source, lineno, "", "expected '<query_id> Q0 <doc_id> <rank> <score> <run_tag>'");
        }
        auto q = ParagraphId::parse(qid);
        if (!q) {
            throw RecordError(source, lineno, "query_id", "not a paragraph id: " + qid);
        }
        auto d = ParagraphId::parse(did);
        if (!d) {
            throw RecordError(source, lineno, "doc_id", "not a paragraph id: " + did);
        }
        std::size_t rank = 0;
        auto [rend, rec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
        if (rec != std::errc{} || rend != rank_text.data() + rank_text.size() || rank == 0) {
            throw RecordError(source, lineno, "rank", "not a positive integer: " + rank_text);
        }
        double score = 0.0;
        auto [send, sec] = std::from_chars(score_text.data(), score_text.data() + score_text.size(), score);
        if (sec != std::errc{} || send != score_text.data() + score_text.size()) {
            throw RecordError(source, lineno, "score", "not a number: " + score_text);
        }
        if (run.run_tag.empty()) {
            run.run_tag = tag;
        }
        rows[*q].push_back({rank, {*d, score}, lineno});
    }
    for (auto& [q, list] : rows) {
        std::stable_sort(list.begin(), list.end(), [](const Row& a, const Row& b) { return a.rank < b.rank; });
        QueryRun qr;
        qr.query = q;
        std::unordered_set<ParagraphId> seen;
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (i > 0 && list[i].rank == list[i - 1].rank) {
                throw RecordError(source, list[i].line, "rank",
                                  "rank " + std::to_string(list[i].rank) + " repeated for query " + q.str());
            }
            if (!seen.insert(list[i].doc.doc).second) {
                throw RecordError(source, list[i].line, "doc_id",
                                  "document " + list[i].doc.doc.str() + " repeated for query " + q.str());
            }
            qr.rows.push_back(list[i].doc);
        }
        run.queries.push_back(std::move(qr));
    }
    return run;
}

RunRanking read_run_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    return read_run(in, path);
}

}  // namespace lexgap
