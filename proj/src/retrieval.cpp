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

#include "lexgap/retrieval.hpp"

#include <algorithm>

#include "lexgap/error.hpp"
#include "lexgap/parallel.hpp"

namespace lexgap {

namespace {

// Queries are processed in blocks so that exhaustive exports stay bounded in
// memory while blocks are still written strictly in query order.
constexpr std::size_t kBlock = 64;

std::uint32_t pool_position(const std::vector<ParagraphId>& pool, const ParagraphId& id, const ParagraphId& query)
{
    auto it = std::lower_bound(pool.begin(), pool.end(), id);
    if (it == pool.end() || *it != id) {
        throw ValidationError("relevant document " + id.str() + " of query " + query.str() +
                              " is not in the candidate pool");
    }
    return static_cast<std::uint32_t>(it - pool.begin());
}

}  // namespace

RetrievalResult run_retrieval(const std::vector<ParagraphId>& pool, const std::vector<ParagraphId>& queries,
                              const PoolScorer& scorer, const RetrievalOptions& options, const RetrievalTask* task,
                              std::ostream* run_out)
{
    for (std::size_t i = 1; i < queries.size(); ++i) {
        if (!(queries[i - 1] < queries[i])) {
            throw ValidationError("queries must be unique and ascending near " + queries[i].str());
        }
    }
    if (task != nullptr) {
        for (const auto& tq : task->queries) {
            if (!std::binary_search(queries.begin(), queries.end(), tq.id)) {
                throw ValidationError("task query " + tq.id.str() + " is not among the queries to retrieve");
            }
        }
    }
    RetrievalResult result;
    result.run.run_tag = options.run_tag;
    std::vector<QueryMetrics> per_query;

    struct Slot {
        std::vector<std::uint32_t> top;
        std::vector<double> top_scores;
        std::optional<QueryMetrics> metrics;
    };

    for (std::size_t start = 0; start < queries.size(); start += kBlock) {
        const std::size_t count = std::min(kBlock, queries.size() - start);
        std::vector<Slot> slots(count);
        parallel_for(count, options.threads, [&](std::size_t j) {
            const std::size_t qi = start + j;
            PoolScores scores = scorer(qi);
            if (scores.size() != pool.size()) {
                throw std::logic_error("scorer returned a score vector of the wrong size");
            }
            auto& slot = slots[j];
            if (run_out != nullptr || options.keep_rows) {
                slot.top = scores.top_k(options.depth);
                slot.top_scores.reserve(slot.top.size());
                for (auto pos : slot.top) {
                    slot.top_scores.push_back(scores.score(pos));
                }
            }
            if (task != nullptr) {
                if (const auto* tq = task->find(queries[qi])) {
                    std::vector<std::size_t> ranks;
                    for (const auto& rel : tq->relevant) {
                        ranks.push_back(scores.rank_of(pool_position(pool, rel, tq->id)));
                    }
                    auto m = metrics_from_ranks(std::move(ranks));
                    m.query = tq->id;
                    slot.metrics = std::move(m);
                }
            }
        });
        for (std::size_t j = 0; j < count; ++j) {
            auto& slot = slots[j];
            QueryRun qr;
            qr.query = queries[start + j];
            qr.rows.reserve(slot.top.size());
            for (std::size_t r = 0; r < slot.top.size(); ++r) {
                qr.rows.push_back({pool[slot.top[r]], slot.top_scores[r]});
            }
            if (run_out != nullptr) {
                write_run(*run_out, qr, options.run_tag, options.depth);
            }
            if (options.keep_rows) {
                result.run.queries.push_back(std::move(qr));
            }
            if (slot.metrics) {
                per_query.push_back(std::move(*slot.metrics));
            }
        }
    }
    if (task != nullptr) {
        result.metrics = aggregate(std::move(per_query), options.run_tag);
    }
    return result;
}

}  // namespace lexgap
