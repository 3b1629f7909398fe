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
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexgap/corpus.hpp"
#include "lexgap/ranking.hpp"
#include "lexgap/tokenizer.hpp"

namespace lexgap {

struct VocabEntry {
    std::string gram;          // tokens joined by single spaces
    std::uint64_t frequency;   // total occurrences over the training docs
    std::uint32_t df;          // training docs containing the gram
};

/// Top-K most frequent n-grams of a training set, ordered by
/// (frequency desc, gram asc).
class NGramVocab {
  public:
    NGramVocab() = default;
    NGramVocab(std::size_t n, std::size_t k, std::size_t train_docs, std::vector<VocabEntry> entries);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t k() const noexcept { return k_; }
    [[nodiscard]] std::size_t train_docs() const noexcept { return train_docs_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] const std::vector<VocabEntry>& entries() const noexcept { return entries_; }
    [[nodiscard]] const VocabEntry& operator[](std::size_t i) const { return entries_[i]; }
    /// Index of a space-joined gram, or -1.
    [[nodiscard]] std::int64_t find(const std::string& gram) const;

    /// ln((1 + N_train) / (1 + df)) + 1
    [[nodiscard]] double idf(std::size_t index) const;

  private:
    std::size_t n_ = 1;
    std::size_t k_ = 0;
    std::size_t train_docs_ = 0;
    std::vector<VocabEntry> entries_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

/// Sorted (vocab index, weight) pairs; weights are tf * idf.
using SparseVec = std::vector<std::pair<std::uint32_t, double>>;

/// Space-joined n-gram windows of a token sequence.
std::vector<std::string> joined_ngrams(const TokenSeq& tokens, std::size_t n);

NGramVocab build_tfidf_vocab(std::span<const TokenSeq> train_docs, std::size_t n, std::size_t k = 5000);

SparseVec vectorize(const NGramVocab& vocab, const TokenSeq& tokens);

/// Cosine of the two tf-idf vectors; 0 when either has zero norm.
double tfidf_score(const NGramVocab& vocab, const TokenSeq& query, const TokenSeq& doc);

/// Candidate pool stored as L2-normalized tf-idf vectors in an inverted layout.
class TfidfIndex {
  public:
    struct Entry {
        std::uint32_t doc;
        double weight;  // normalized
    };

    TfidfIndex() = default;

    /// `ids` strictly ascending; docs[i] belongs to ids[i].
    static TfidfIndex build(NGramVocab vocab, std::vector<ParagraphId> ids, std::span<const TokenSeq> docs);
    static TfidfIndex build(NGramVocab vocab, const Corpus& corpus, std::span<const ParagraphId> candidates,
                            unsigned threads = 1);
    static TfidfIndex from_parts(NGramVocab vocab, std::vector<ParagraphId> ids, std::vector<std::size_t> offsets,
                                 std::vector<Entry> entries);

    [[nodiscard]] const NGramVocab& vocab() const noexcept { return vocab_; }
    [[nodiscard]] std::size_t doc_count() const noexcept { return ids_.size(); }
    [[nodiscard]] const std::vector<ParagraphId>& doc_ids() const noexcept { return ids_; }
    [[nodiscard]] const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
    [[nodiscard]] const std::vector<Entry>& entries() const noexcept { return entries_; }

    [[nodiscard]] PoolScores score_all(const TokenSeq& query) const;
    [[nodiscard]] std::vector<ScoredDoc> top_k(const TokenSeq& query, std::size_t k) const;

  private:
    NGramVocab vocab_;
    std::vector<ParagraphId> ids_;
    std::vector<std::size_t> offsets_;  // CSR by vocab index
    std::vector<Entry> entries_;
};

}  // namespace lexgap
