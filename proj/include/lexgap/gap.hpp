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
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexgap/corpus.hpp"
#include "lexgap/evaluation.hpp"
#include "lexgap/ranking.hpp"
#include "lexgap/splitter.hpp"
#include "lexgap/stats.hpp"
#include "lexgap/tokenizer.hpp"

namespace lexgap {

inline constexpr std::size_t kMinCommonN = 2;
inline constexpr std::size_t kMaxCommonN = 10;
inline constexpr std::size_t kCommonNCount = kMaxCommonN - kMinCommonN + 1;

/// Overlap between a query paragraph and the paragraphs it cites. Each
/// pairwise quantity is averaged over the cited paragraphs.
struct SimilarityProfile {
    ParagraphId query;
    double mean_edit_distance = 0.0;
    std::array<double, kCommonNCount> common_ngrams{};  // index n - kMinCommonN
    double lcs = 0.0;
    std::size_t query_len = 0;

    [[nodiscard]] double common(std::size_t n) const { return common_ngrams.at(n - kMinCommonN); }
};

/// Profile of already tokenized text. `relevant` must be non-empty.
SimilarityProfile similarity_profile(const TokenSeq& query, std::span<const TokenSeq> relevant);

/// Throws ValidationError when the query is not in the task or a paragraph is
/// missing from the corpus.
SimilarityProfile similarity_profile(const RetrievalTask& task, const ParagraphId& query, const Corpus& corpus);

struct ScenarioPartition {
    MetricSpec metric;
    std::vector<ParagraphId> both_perfect;  // A = 1, B = 1
    std::vector<ParagraphId> a_only;        // A = 1, B = 0
    std::vector<ParagraphId> b_only;        // A = 0, B = 1
    std::vector<ParagraphId> neither;       // everything else
};

/// Buckets every task query by the metric value of both runs. A query absent
/// from either run is a ValidationError.
ScenarioPartition partition_scenarios(const RetrievalTask& task, const RunRanking& run_a, const RunRanking& run_b,
                                      const MetricSpec& metric);

struct GroupStats {
    MeanStd summary;
    std::optional<double> median;
};

struct QuantityComparison {
    std::string name;                  // edit_distance, lcs, query_len, common_<n>grams
    GroupStats both_perfect;
    GroupStats a_only;
    std::optional<TestResult> test;    // a_only vs both_perfect
    std::string skipped_reason;        // set when test is absent
};

struct GapReport {
    std::string run_a_tag;
    std::string run_b_tag;
    ScenarioPartition partition;
    std::vector<QuantityComparison> quantities;
    std::vector<std::string> notices;
};

GapReport gap_report(const RetrievalTask& task, const RunRanking& run_a, const RunRanking& run_b,
                     const MetricSpec& metric, const Corpus& corpus, unsigned threads = 0);

nlohmann::json to_json(const GapReport& report);

/// Columns n,group,mean,std for n = 2..10 and groups both_perfect, a_only.
void write_ngram_curves(std::ostream& out, const GapReport& report);

}  // namespace lexgap
