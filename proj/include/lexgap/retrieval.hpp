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
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lexgap/evaluation.hpp"
#include "lexgap/ranking.hpp"
#include "lexgap/splitter.hpp"

namespace lexgap {

/// Produces exhaustive pool scores for query number i.
using PoolScorer = std::function<PoolScores(std::size_t query_index)>;

struct RetrievalOptions {
    std::string run_tag = "run";
    /// Rows exported per query; the ranking itself is always exhaustive.
    std::size_t depth = std::numeric_limits<std::size_t>::max();
    unsigned threads = 0;  // 0: hardware concurrency
    /// Keep exported rows in RetrievalResult::run as well as streaming them.
    bool keep_rows = false;
};

struct RetrievalResult {
    RunRanking run;                         // rows only when keep_rows
    std::optional<MetricsReport> metrics;   // when a task was supplied
};

/// Ranks every query against `pool` (ascending ids, the scorer's position
/// order). When `task` is given, each query found in it is scored from its
/// exhaustive ranking; every relevant id must be in the pool. Run lines go
/// to `run_out` in query order, independent of the thread count.
RetrievalResult run_retrieval(const std::vector<ParagraphId>& pool, const std::vector<ParagraphId>& queries,
                              const PoolScorer& scorer, const RetrievalOptions& options,
                              const RetrievalTask* task = nullptr, std::ostream* run_out = nullptr);

}  // namespace lexgap
