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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "lexgap/paragraph_id.hpp"
#include "lexgap/stats.hpp"

namespace lexgap {

/// Dense position of a paragraph inside a Corpus. Paragraphs are stored in
/// ParagraphId order, so comparing indices compares ids.
using DocIndex = std::uint32_t;

struct Paragraph {
    ParagraphId id;
    std::string title;
    std::chrono::year_month_day date;
    std::string text;
};

/// Immutable, id-sorted paragraph collection.
class Corpus {
  public:
    Corpus() = default;
    /// Sorts by id. Throws ValidationError on a duplicate id.
    explicit Corpus(std::vector<Paragraph> paragraphs);

    [[nodiscard]] std::size_t size() const noexcept { return paragraphs_.size(); }
    [[nodiscard]] bool empty() const noexcept { return paragraphs_.empty(); }
    [[nodiscard]] const Paragraph& operator[](DocIndex i) const { return paragraphs_[i]; }
    [[nodiscard]] const std::vector<Paragraph>& paragraphs() const noexcept { return paragraphs_; }

    [[nodiscard]] std::optional<DocIndex> find(const ParagraphId& id) const;
    /// Throws ValidationError naming the id when absent.
    [[nodiscard]] DocIndex at(const ParagraphId& id) const;
    [[nodiscard]] const Paragraph& get(const ParagraphId& id) const { return paragraphs_[at(id)]; }

  private:
    std::vector<Paragraph> paragraphs_;
    std::unordered_map<ParagraphId, DocIndex> index_;
};

struct CitationEdge {
    DocIndex citing;
    DocIndex cited;
    friend auto operator<=>(const CitationEdge&, const CitationEdge&) = default;
};

/// Directed citing -> cited edges with set semantics, plus CSR adjacency in
/// both directions.
class CitationGraph {
  public:
    CitationGraph() = default;
    /// Sorts and deduplicates. Self-edges must be rejected by the caller.
    CitationGraph(std::size_t node_count, std::vector<CitationEdge> edges);

    [[nodiscard]] const std::vector<CitationEdge>& edges() const noexcept { return edges_; }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
    [[nodiscard]] std::size_t node_count() const noexcept { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
    [[nodiscard]] std::size_t duplicates_collapsed() const noexcept { return duplicates_; }

    [[nodiscard]] std::size_t out_degree(DocIndex d) const { return out_offsets_[d + 1] - out_offsets_[d]; }
    [[nodiscard]] std::size_t in_degree(DocIndex d) const { return in_offsets_[d + 1] - in_offsets_[d]; }
    /// Cited paragraphs of d, ascending.
    [[nodiscard]] std::vector<DocIndex> cited_by(DocIndex d) const;

  private:
    std::vector<CitationEdge> edges_;
    std::vector<std::size_t> out_offsets_;
    std::vector<std::size_t> in_offsets_;
    std::size_t duplicates_ = 0;
};

struct CorpusStats {
    std::size_t unique_decisions = 0;               // decisions with >= 1 paragraph
    std::size_t decisions_in_citation_graph = 0;    // decisions touching >= 1 edge
    std::size_t unique_paragraphs = 0;
    MeanStd mean_paragraphs_per_decision;
    MeanStd mean_words_per_paragraph;
    std::size_t citation_count = 0;
    std::size_t duplicate_citations_collapsed = 0;
    MeanStd mean_inbound;                           // over paragraphs with in-degree >= 1
    MeanStd mean_outbound;                          // over paragraphs with out-degree >= 1
    MeanStd decision_level_inbound;                 // over decisions cited at least once
    MeanStd decision_level_outbound;                // over decisions citing at least once
};

/// Reads `paragraphs.jsonl`. `source` names the stream in error messages.
/// Errors carry the 1-based line number and the offending field.
Corpus ingest_paragraphs(std::istream& in, std::string_view source = "paragraphs");
Corpus ingest_paragraphs_file(const std::string& path);

/// Reads `citations.jsonl` against an already loaded corpus.
CitationGraph ingest_citations(std::istream& in, const Corpus& corpus, std::string_view source = "citations");
CitationGraph ingest_citations_file(const std::string& path, const Corpus& corpus);

/// Word counts use lexgap::tokenize.
CorpusStats corpus_stats(const Corpus& corpus, const CitationGraph& graph);

/// Stable-key-ordered JSON mirroring the CorpusStats field names; each
/// MeanStd becomes {"mean", "std", "n"} with null for absent values.
nlohmann::json to_json(const CorpusStats& stats);

/// One paragraphs.jsonl line (no trailing newline), keys sorted.
std::string render_paragraph(const Paragraph& p);
void write_paragraphs(std::ostream& out, const Corpus& corpus, const std::vector<DocIndex>& subset);
std::string render_citation(const Corpus& corpus, const CitationEdge& e);

std::string format_date(const std::chrono::year_month_day& d);
std::optional<std::chrono::year_month_day> parse_date(std::string_view text);

}  // namespace lexgap
