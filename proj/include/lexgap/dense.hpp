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
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexgap/paragraph_id.hpp"
#include "lexgap/ranking.hpp"

namespace lexgap {

/// Packed binary embedding format magic.
inline constexpr std::string_view kEmbeddingMagic = "EMB1";

enum class EmbeddingFormat { ndjson, emb1 };

/// Validated id -> float vector map with one fixed dimension.
class EmbeddingStore {
  public:
    explicit EmbeddingStore(std::size_t dim = 0, std::string model_tag = {});

    /// The first add fixes the dimension when the store was created with 0.
    /// Throws ValidationError on dimension mismatch, non-finite entry or a
    /// duplicate id; `record` (1-based) is quoted in the message.
    void add(const ParagraphId& id, std::span<const float> vector, std::size_t record = 0);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
    [[nodiscard]] const std::string& model_tag() const noexcept { return model_tag_; }
    void set_model_tag(std::string tag) { model_tag_ = std::move(tag); }
    [[nodiscard]] const std::vector<ParagraphId>& ids() const noexcept { return ids_; }
    [[nodiscard]] std::optional<std::size_t> find(const ParagraphId& id) const;
    [[nodiscard]] std::span<const float> vector(std::size_t row) const
    {
        return {data_.data() + row * dim_, dim_};
    }

  private:
    std::size_t dim_;
    std::string model_tag_;
    std::vector<ParagraphId> ids_;  // insertion order
    std::vector<float> data_;
    std::unordered_map<ParagraphId, std::size_t> index_;
};

/// Detects the format from the leading bytes (EMB1 magic, else NDJSON).
EmbeddingStore read_embeddings(std::istream& in, const std::string& source = "embeddings");
/// The model tag defaults to the file's stem.
EmbeddingStore read_embeddings_file(const std::string& path);

/// NDJSON floats use the shortest text that parses back to the same float.
void write_embeddings(std::ostream& out, const EmbeddingStore& store, EmbeddingFormat format);
void write_embeddings_file(const std::string& path, const EmbeddingStore& store, EmbeddingFormat format);

/// u.v / (|u| |v|), 0 when either norm is 0. Throws std::invalid_argument on
/// a dimension mismatch.
double cosine(std::span<const float> u, std::span<const float> v);

/// Exhaustive cosine ranking of a fixed candidate pool.
class DenseRanker {
  public:
    /// `candidates` strictly ascending; every one must be present in `store`,
    /// otherwise ValidationError lists the missing ids.
    DenseRanker(const EmbeddingStore& store, std::span<const ParagraphId> candidates);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<ParagraphId>& doc_ids() const noexcept { return ids_; }

    [[nodiscard]] PoolScores score_all(std::span<const float> query) const;
    [[nodiscard]] std::vector<ScoredDoc> top_k(std::span<const float> query, std::size_t k) const;

  private:
    std::size_t dim_;
    std::vector<ParagraphId> ids_;
    std::vector<float> rows_;
    std::vector<double> norms_;
};

/// Top-k candidates for one stored query; query and candidates may live in
/// different stores.
std::vector<ScoredDoc> dense_top_k(const EmbeddingStore& query_store, const ParagraphId& query_id,
                                   const EmbeddingStore& candidate_store, std::span<const ParagraphId> candidates,
                                   std::size_t k);

}  // namespace lexgap
