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

#include <array>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexgap/paragraph_id.hpp"
#include "lexgap/ranking.hpp"
#include "lexgap/splitter.hpp"

namespace lexgap {

inline constexpr std::array<std::size_t, 4> kRecallCutoffs = {1, 5, 10, 20};
inline constexpr std::size_t kNdcgCutoff = 10;

// Binary relevance throughout. `ranked` is best-first; `relevant` holds unique
// ids in any order and must be non-empty (std::invalid_argument otherwise).

/// |relevant ∩ top-k| / |relevant|
double recall_at_k(std::span<const ParagraphId> ranked, std::span<const ParagraphId> relevant, std::size_t k);

/// DCG@k / IDCG@k, gain 1 per relevant hit, discount 1 / log2(rank + 1) with
/// 1-based ranks; IDCG fills the first min(k, |relevant|) slots.
double ndcg_at_k(std::span<const ParagraphId> ranked, std::span<const ParagraphId> relevant, std::size_t k = kNdcgCutoff);

/// Mean over relevant docs of precision at their rank. The ranking must be
/// exhaustive: a relevant doc missing from it is a ValidationError.
double average_precision(std::span<const ParagraphId> ranked, std::span<const ParagraphId> relevant);

/// 1 / rank of the first relevant doc; ValidationError if none is ranked.
double reciprocal_rank(std::span<const ParagraphId> ranked, std::span<const ParagraphId> relevant);

struct QueryMetrics {
    ParagraphId query;
    std::array<double, kRecallCutoffs.size()> recall{};
    double ndcg_at_10 = 0.0;
    double average_precision = 0.0;
    double reciprocal_rank = 0.0;
};

/// All per-query metrics from the 1-based ranks of every relevant doc.
QueryMetrics metrics_from_ranks(std::vector<std::size_t> relevant_ranks);

struct MetricsReport {
    std::array<double, kRecallCutoffs.size()> recall_at{};  // aligned with kRecallCutoffs
    double ndcg_at_10 = 0.0;
    double map = 0.0;
    double mrr = 0.0;
    std::size_t query_count = 0;
    std::string run_tag;
    std::vector<QueryMetrics> per_query;

    [[nodiscard]] double recall(std::size_t k) const;
};

/// Unweighted mean over queries, with compensated summation so the result
/// does not depend on the order queries were scored in.
MetricsReport aggregate(std::vector<QueryMetrics> per_query, std::string run_tag = {});

/// Scores every task query from the run. Errors: a task query missing from
/// the run, or a relevant doc absent from its ranking (depth too shallow).
MetricsReport evaluate_run(const RetrievalTask& task, const RunRanking& run);

/// Keys exactly: recall@1, recall@5, recall@10, recall@20, ndcg@10, map, mrr, query_count.
nlohmann::json to_json(const MetricsReport& report);

/// query_id,recall@1,recall@5,recall@10,recall@20,ndcg@10,ap,rr
void write_per_query_csv(std::ostream& out, const MetricsReport& report);

/// A per-query metric selector such as "recall@5", "ndcg@10", "map"/"ap" or
/// "mrr"/"rr".
struct MetricSpec {
    enum class Kind { recall, ndcg, average_precision, reciprocal_rank };
    Kind kind = Kind::recall;
    std::size_t k = 0;

    /// Throws ValidationError for names outside the supported set.
    static MetricSpec parse(const std::string& text);
    [[nodiscard]] std::string name() const;
    [[nodiscard]] double pick(const QueryMetrics& m) const;
    /// Value for one query of a possibly truncated run; ValidationError when
    /// the run is too shallow to decide it.
    [[nodiscard]] double evaluate(const QueryRun& run, std::span<const ParagraphId> relevant) const;
};

}  // namespace lexgap
