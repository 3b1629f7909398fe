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

#include "lexgap/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lexgap/error.hpp"
#include "lexgap/parallel.hpp"

namespace lexgap {

void Bm25Params::validate() const
{
    if (!(k1 > 0.0) || !std::isfinite(k1)) {
        throw ValidationError("bm25: k1 must be > 0");
    }
    if (!(b >= 0.0 && b <= 1.0)) {
        throw ValidationError("bm25: b must lie in [0, 1]");
    }
}

Bm25Index Bm25Index::build(std::vector<ParagraphId> ids, std::span<const TokenSeq> docs, Bm25Params params)
{
    params.validate();
    if (ids.empty()) {
        throw ValidationError("bm25: empty candidate set");
    }
    if (ids.size() != docs.size()) {
        throw std::invalid_argument("bm25: ids/docs size mismatch");
    }
    for (std::size_t i = 1; i < ids.size(); ++i) {
        if (!(ids[i - 1] < ids[i])) {
            throw ValidationError("bm25: candidate ids must be unique and ascending near " + ids[i].str());
        }
    }

    Bm25Index idx;
    idx.params_ = params;
    idx.ids_ = std::move(ids);

    // term -> postings, terms ordered lexicographically for a stable layout
    std::map<std::string, std::vector<Posting>, std::less<>> inverted;
    idx.doc_len_.resize(docs.size());
    std::uint64_t total = 0;
    for (std::uint32_t d = 0; d < docs.size(); ++d) {
        std::map<std::string_view, std::uint32_t> tf;
        for (const auto& t : docs[d]) {
            ++tf[t];
        }
        for (const auto& [term, count] : tf) {
            auto it = inverted.find(term);
            if (it == inverted.end()) {
                it = inverted.emplace(std::string(term), std::vector<Posting>{}).first;
            }
            it->second.push_back({d, count});
        }
        idx.doc_len_[d] = static_cast<std::uint32_t>(docs[d].size());
        total += docs[d].size();
    }
    idx.avg_len_ = static_cast<double>(total) / static_cast<double>(docs.size());

    idx.terms_.reserve(inverted.size());
    idx.offsets_.reserve(inverted.size() + 1);
    idx.offsets_.push_back(0);
    for (auto& [term, list] : inverted) {
        idx.terms_.push_back(term);
        idx.postings_.insert(idx.postings_.end(), list.begin(), list.end());
        idx.offsets_.push_back(idx.postings_.size());
    }
    idx.finish();
    return idx;
}

Bm25Index Bm25Index::build(const Corpus& corpus, std::span<const ParagraphId> candidates, Bm25Params params,
                           unsigned threads)
{
    std::vector<TokenSeq> docs(candidates.size());
    parallel_for(candidates.size(), threads, [&](std::size_t i) { docs[i] = tokenize(corpus.get(candidates[i]).text); });
    return build(std::vector<ParagraphId>(candidates.begin(), candidates.end()), docs, params);
}

Bm25Index Bm25Index::from_parts(Bm25Params params, std::vector<ParagraphId> ids, std::vector<std::string> terms,
                                std::vector<std::uint32_t> doc_len, double avg_len, std::vector<std::size_t> offsets,
                                std::vector<Posting> postings)
{
    params.validate();
    if (ids.empty() || doc_len.size() != ids.size() || offsets.size() != terms.size() + 1 ||
        offsets.back() != postings.size()) {
        throw ValidationError("bm25 snapshot: inconsistent section sizes");
    }
    for (const auto& p : postings) {
        if (p.doc >= ids.size() || p.tf == 0) {
            throw ValidationError("bm25 snapshot: posting out of range");
        }
    }
    Bm25Index idx;
    idx.params_ = params;
    idx.ids_ = std::move(ids);
    idx.terms_ = std::move(terms);
    idx.doc_len_ = std::move(doc_len);
    idx.avg_len_ = avg_len;
    idx.offsets_ = std::move(offsets);
    idx.postings_ = std::move(postings);
    idx.finish();
    return idx;
}

void Bm25Index::finish()
{
    pos_.clear();
    pos_.reserve(ids_.size());
    for (std::uint32_t i = 0; i < ids_.size(); ++i) {
        pos_.emplace(ids_[i], i);
    }
    term_index_.clear();
    term_index_.reserve(terms_.size());
    for (std::uint32_t t = 0; t < terms_.size(); ++t) {
        term_index_.emplace(terms_[t], t);
    }
    length_norm_.resize(ids_.size());
    for (std::size_t d = 0; d < ids_.size(); ++d) {
        // avg_len_ == 0 only when every document is empty; no term can match then.
        double rel = avg_len_ > 0.0 ? static_cast<double>(doc_len_[d]) / avg_len_ : 0.0;
        length_norm_[d] = params_.k1 * (1.0 - params_.b + params_.b * rel);
    }
}

std::optional<std::uint32_t> Bm25Index::position(const ParagraphId& id) const
{
    auto it = pos_.find(id);
    if (it == pos_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t Bm25Index::df(std::string_view term) const { return postings(term).size(); }

std::span<const Posting> Bm25Index::postings(std::string_view term) const
{
    auto it = term_index_.find(std::string(term));
    if (it == term_index_.end()) {
        return {};
    }
    return {postings_.data() + offsets_[it->second], offsets_[it->second + 1] - offsets_[it->second]};
}

double Bm25Index::idf(std::size_t df) const
{
    const auto n = static_cast<double>(ids_.size());
    const auto f = static_cast<double>(df);
    double v = std::log((n - f + 0.5) / (f + 0.5));
    return params_.idf_floor0 ? std::max(0.0, v) : v;
}

double Bm25Index::contribution(std::uint32_t tf, std::uint32_t pos, double idf) const
{
    const auto f = static_cast<double>(tf);
    return idf * (f * (params_.k1 + 1.0)) / (f + length_norm_[pos]);
}

std::vector<Bm25Index::QueryTerm> Bm25Index::query_terms(const TokenSeq& query) const
{
    std::map<std::uint32_t, std::uint32_t> counts;
    for (const auto& t : query) {
        auto it = term_index_.find(t);
        if (it != term_index_.end()) {
            ++counts[it->second];
        }
    }
    std::vector<QueryTerm> out;
    out.reserve(counts.size());
    for (auto [term, count] : counts) {
        out.push_back({term, count});
    }
    return out;
}

double Bm25Index::score(const TokenSeq& query, const ParagraphId& doc) const
{
    auto pos = position(doc);
    if (!pos) {
        throw ValidationError("bm25: document " + doc.str() + " is not in the index");
    }
    double total = 0.0;
    for (const auto& qt : query_terms(query)) {
        auto begin = postings_.begin() + static_cast<std::ptrdiff_t>(offsets_[qt.term]);
        auto end = postings_.begin() + static_cast<std::ptrdiff_t>(offsets_[qt.term + 1]);
        auto it = std::lower_bound(begin, end, *pos, [](const Posting& p, std::uint32_t d) { return p.doc < d; });
        if (it == end || it->doc != *pos) {
            continue;
        }
        const double w = idf(static_cast<std::size_t>(end - begin));
        total += static_cast<double>(qt.count) * contribution(it->tf, *pos, w);
    }
    return total;
}

PoolScores Bm25Index::score_all(const TokenSeq& query) const
{
    std::vector<double> scores(ids_.size(), 0.0);
    for (const auto& qt : query_terms(query)) {
        const std::size_t begin = offsets_[qt.term];
        const std::size_t end = offsets_[qt.term + 1];
        const double w = idf(end - begin);
        const auto mult = static_cast<double>(qt.count);
        for (std::size_t i = begin; i < end; ++i) {
            const auto& p = postings_[i];
            scores[p.doc] += mult * contribution(p.tf, p.doc, w);
        }
    }
    return PoolScores(std::move(scores));
}

std::vector<ScoredDoc> Bm25Index::top_k(const TokenSeq& query, std::size_t k) const
{
    auto scores = score_all(query);
    std::vector<ScoredDoc> out;
    for (auto pos : scores.top_k(k)) {
        out.push_back({ids_[pos], scores.score(pos)});
    }
    return out;
}

}  // namespace lexgap
