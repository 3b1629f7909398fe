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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexgap/corpus.hpp"
#include "lexgap/ranking.hpp"
#include "lexgap/tokenizer.hpp"

namespace lexgap {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
    /// Clamp negative IDF (terms in more than half the pool) to zero. Off by
    /// default: the plain Okapi sum keeps negative contributions.
    bool idf_floor0 = false;

    void validate() const;
};

struct Posting {
    std::uint32_t doc;  // pool position
    std::uint32_t tf;
};

/// Inverted index over a candidate pool for Okapi BM25:
///
///   score(q, d) = sum_{t in q, tf(t,d) > 0} idf(t) * tf(t,d) (k1 + 1) / (tf(t,d) + k1 (1 - b + b ld / L))
///   idf(t)      = ln((N - df(t) + 0.5) / (df(t) + 0.5))
///
/// The sum runs over the query multiset: a term repeated in the query counts
/// once per occurrence. ld is the token count of d, L the mean over the pool.
/// Pool position order equals ParagraphId order.
class Bm25Index {
  public:
    Bm25Index() = default;

    /// `ids` must be strictly ascending and non-empty; docs[i] belongs to ids[i].
    static Bm25Index build(std::vector<ParagraphId> ids, std::span<const TokenSeq> docs, Bm25Params params = {});
    /// Tokenizes the candidates' texts (in parallel when threads != 1).
    static Bm25Index build(const Corpus& corpus, std::span<const ParagraphId> candidates, Bm25Params params = {},
                           unsigned threads = 1);

    [[nodiscard]] const Bm25Params& params() const noexcept { return params_; }
    [[nodiscard]] std::size_t doc_count() const noexcept { return ids_.size(); }
    [[nodiscard]] const std::vector<ParagraphId>& doc_ids() const noexcept { return ids_; }
    [[nodiscard]] std::optional<std::uint32_t> position(const ParagraphId& id) const;
    [[nodiscard]] double avg_len() const noexcept { return avg_len_; }
    [[nodiscard]] std::uint32_t doc_len(std::uint32_t pos) const { return doc_len_[pos]; }
    [[nodiscard]] std::size_t term_count() const noexcept { return terms_.size(); }
    [[nodiscard]] std::size_t df(std::string_view term) const;
    [[nodiscard]] std::span<const Posting> postings(std::string_view term) const;

    /// IDF for a document frequency under this index's N (and floor setting).
    [[nodiscard]] double idf(std::size_t df) const;

    /// Throws ValidationError for a doc outside the pool.
    [[nodiscard]] double score(const TokenSeq& query, const ParagraphId& doc) const;
    /// Scores of every pool document, bitwise equal to score() per doc.
    [[nodiscard]] PoolScores score_all(const TokenSeq& query) const;
    [[nodiscard]] std::vector<ScoredDoc> top_k(const TokenSeq& query, std::size_t k) const;

    // Snapshot access.
    [[nodiscard]] const std::vector<std::string>& terms() const noexcept { return terms_; }
    [[nodiscard]] const std::vector<std::uint32_t>& doc_lengths() const noexcept { return doc_len_; }
    [[nodiscard]] const std::vector<std::size_t>& posting_offsets() const noexcept { return offsets_; }
    [[nodiscard]] const std::vector<Posting>& posting_data() const noexcept { return postings_; }
    static Bm25Index from_parts(Bm25Params params, std::vector<ParagraphId> ids, std::vector<std::string> terms,
                                std::vector<std::uint32_t> doc_len, double avg_len, std::vector<std::size_t> offsets,
                                std::vector<Posting> postings);

  private:
    struct QueryTerm {
        std::uint32_t term;
        std::uint32_t count;
    };
    std::vector<QueryTerm> query_terms(const TokenSeq& query) const;
    double contribution(std::uint32_t tf, std::uint32_t pos, double idf) const;
    void finish();

    Bm25Params params_;
    std::vector<ParagraphId> ids_;
    std::unordered_map<ParagraphId, std::uint32_t> pos_;
    std::vector<std::string> terms_;  // ascending
    std::unordered_map<std::string, std::uint32_t> term_index_;
    std::vector<std::size_t> offsets_;  // CSR into postings_, size terms_ + 1
    std::vector<Posting> postings_;     // per term ascending by doc
    std::vector<std::uint32_t> doc_len_;
    double avg_len_ = 0.0;
    std::vector<double> length_norm_;   // k1 (1 - b + b ld / L)
};

}  // namespace lexgap
