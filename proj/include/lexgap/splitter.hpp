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
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexgap/corpus.hpp"

namespace lexgap {

/// Calendar-year boundaries: year <= train_end_year is training,
/// year <= valid_end_year is validation, anything later is test.
struct SplitBoundaries {
    int train_end_year = 2016;
    int valid_end_year = 2018;

    /// Throws ValidationError unless train_end_year < valid_end_year.
    void validate() const;
};

enum class Split { train, valid, test };

const char* to_string(Split s);

struct SplitCounts {
    std::size_t paragraphs = 0;             // members of the split
    std::size_t citations = 0;              // retained edges whose citing paragraph is in the split
    std::size_t cited_citations = 0;        // retained edges whose cited paragraph is in the split
};

/// Date-based assignment of every paragraph that touches at least one edge of
/// the original graph. Test->test edges are removed from `retained` and
/// recorded in `purged`.
struct SplitSet {
    SplitBoundaries boundaries;
    std::vector<DocIndex> train;
    std::vector<DocIndex> valid;
    std::vector<DocIndex> test;
    std::vector<CitationEdge> retained;
    std::vector<CitationEdge> purged;
    std::size_t isolated_paragraphs = 0;    // no incident edge at all; left out of every split

    [[nodiscard]] SplitCounts counts(Split s, const Corpus& corpus) const;
};

SplitSet temporal_split(const Corpus& corpus, const CitationGraph& graph, const SplitBoundaries& boundaries);

struct TaskQuery {
    ParagraphId id;
    std::vector<ParagraphId> relevant;  // ascending, non-empty
};

/// Frozen evaluation problem. Queries and candidates are sorted by id.
struct RetrievalTask {
    std::vector<TaskQuery> queries;
    std::vector<ParagraphId> candidates;
    std::size_t dropped_queries = 0;    // test paragraphs whose citations were all purged

    [[nodiscard]] std::size_t relevant_pairs() const;
    [[nodiscard]] const TaskQuery* find(const ParagraphId& id) const;
};

/// One query per test paragraph with >= 1 retained outbound edge; the
/// relevant set is everything it cites. Candidates = train + valid.
RetrievalTask build_task(const SplitSet& splits, const Corpus& corpus);

/// TREC qrels: `<query_id> 0 <doc_id> 1` per relevant pair, queries in order.
void write_qrels(std::ostream& out, const RetrievalTask& task);

/// Reads TREC qrels. Lines with relevance <= 0 are ignored. Queries come back
/// sorted by id; the candidate pool is left empty (qrels do not carry it).
RetrievalTask read_qrels(std::istream& in, const std::string& source = "qrels");
RetrievalTask read_qrels_file(const std::string& path);

/// Per-split paragraph/citation counts plus purge/drop counters.
nlohmann::json split_report(const SplitSet& splits, const RetrievalTask& task, const Corpus& corpus);

}  // namespace lexgap
