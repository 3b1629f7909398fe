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

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lexgap/paragraph_id.hpp"

namespace lexgap {

struct ScoredDoc {
    ParagraphId doc;
    double score = 0.0;
};

/// Global ranking order: higher score first, then lower id.
inline bool ranks_before(const ScoredDoc& a, const ScoredDoc& b)
{
    if (a.score != b.score) {
        return a.score > b.score;
    }
    return a.doc < b.doc;
}

struct QueryRun {
    ParagraphId query;
    std::vector<ScoredDoc> rows;  // ranks_before order, no duplicate docs
};

struct RunRanking {
    std::string run_tag;
    std::vector<QueryRun> queries;  // ascending query id

    [[nodiscard]] const QueryRun* find(const ParagraphId& query) const;
};

/// Scores over a candidate pool whose position order equals id order, so the
/// tie rule (-score, id) becomes (-score, position).
class PoolScores {
  public:
    explicit PoolScores(std::vector<double> scores) : scores_(std::move(scores)) {}

    [[nodiscard]] std::size_t size() const noexcept { return scores_.size(); }
    [[nodiscard]] double score(std::size_t pos) const { return scores_[pos]; }
    [[nodiscard]] const std::vector<double>& scores() const noexcept { return scores_; }

    /// 1-based rank of a pool position in the exhaustive ranking, in O(N).
    [[nodiscard]] std::size_t rank_of(std::size_t pos) const;

    /// First min(k, N) pool positions in ranking order.
    [[nodiscard]] std::vector<std::uint32_t> top_k(std::size_t k) const;

  private:
    std::vector<double> scores_;
};

/// TREC run line: `<query_id> Q0 <doc_id> <rank> <score> <run_tag>`, rank from
/// 1, score with 6 decimals. Rows beyond `depth` are not written.
void write_run(std::ostream& out, const QueryRun& q, const std::string& run_tag, std::size_t depth);
void write_run(std::ostream& out, const RunRanking& run, std::size_t depth);

/// Reads a TREC run. Rows are ordered by the rank column; rank ties and
/// duplicate docs within a query are errors. Queries come back sorted by id.
RunRanking read_run(std::istream& in, const std::string& source = "run");
RunRanking read_run_file(const std::string& path);

}  // namespace lexgap
