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

#include "lexgap/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "lexgap/error.hpp"
#include "lexgap/parallel.hpp"

namespace lexgap {

NGramVocab::NGramVocab(std::size_t n, std::size_t k, std::size_t train_docs, std::vector<VocabEntry> entries)
    : n_(n), k_(k), train_docs_(train_docs), entries_(std::move(entries))
{
    if (n_ < 1) {
        throw ValidationError("tfidf vocab: n must be >= 1");
    }
    if (entries_.size() > k_) {
        throw ValidationError("tfidf vocab: more entries than K");
    }
    index_.reserve(entries_.size());
    for (std::uint32_t i = 0; i < entries_.size(); ++i) {
        if (!index_.emplace(entries_[i].gram, i).second) {
            throw ValidationError("tfidf vocab: duplicate gram '" + entries_[i].gram + "'");
        }
    }
}

std::int64_t NGramVocab::find(const std::string& gram) const
{
    auto it = index_.find(gram);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

double NGramVocab::idf(std::size_t index) const
{
    return std::log((1.0 + static_cast<double>(train_docs_)) / (1.0 + static_cast<double>(entries_[index].df))) + 1.0;
}

std::vector<std::string> joined_ngrams(const TokenSeq& tokens, std::size_t n)
{
    if (n < 1) {
        throw std::invalid_argument("ngrams: n must be >= 1");
    }
    std::vector<std::string> out;
    if (tokens.size() < n) {
        return out;
    }
    out.reserve(tokens.size() - n + 1);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string g = tokens[i];
        for (std::size_t j = 1; j < n; ++j) {
            g.push_back(' ');
            g += tokens[i + j];
        }
        out.push_back(std::move(g));
    }
    return out;
}

NGramVocab build_tfidf_vocab(std::span<const TokenSeq> train_docs, std::size_t n, std::size_t k)
{
    struct Counts {
        std::uint64_t freq = 0;
        std::uint32_t df = 0;
        std::uint32_t last_doc = UINT32_MAX;
    };
    std::unordered_map<std::string, Counts> counts;
    for (std::uint32_t d = 0; d < train_docs.size(); ++d) {
        for (auto& g : joined_ngrams(train_docs[d], n)) {
            auto& c = counts[std::move(g)];
            ++c.freq;
            if (c.last_doc != d) {
                c.last_doc = d;
                ++c.df;
            }
        }
    }
    std::vector<VocabEntry> all;
    all.reserve(counts.size());
    for (auto& [gram, c] : counts) {
        all.push_back({gram, c.freq, c.df});
    }
    auto order = [](const VocabEntry& a, const VocabEntry& b) {
        if (a.frequency != b.frequency) {
            return a.frequency > b.frequency;
        }
        return a.gram < b.gram;
    };
    const std::size_t keep = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), order);
    all.resize(keep);
    return NGramVocab(n, k, train_docs.size(), std::move(all));
}

SparseVec vectorize(const NGramVocab& vocab, const TokenSeq& tokens)
{
    std::map<std::uint32_t, std::uint32_t> tf;
    for (const auto& g : joined_ngrams(tokens, vocab.n())) {
        auto i = vocab.find(g);
        if (i >= 0) {
            ++tf[static_cast<std::uint32_t>(i)];
        }
    }
    SparseVec v;
    v.reserve(tf.size());
    for (auto [i, count] : tf) {
        v.emplace_back(i, static_cast<double>(count) * vocab.idf(i));
    }
    return v;
}

namespace {

double norm(const SparseVec& v)
{
    double s = 0.0;
    for (const auto& [i, w] : v) {
        s += w * w;
    }
    return std::sqrt(s);
}

}  // namespace

double tfidf_score(const NGramVocab& vocab, const TokenSeq& query, const TokenSeq& doc)
{
    auto q = vectorize(vocab, query);
    auto d = vectorize(vocab, doc);
    const double nq = norm(q);
    const double nd = norm(d);
    if (nq == 0.0 || nd == 0.0) {
        return 0.0;
    }
    double dot = 0.0;
    std::size_t a = 0;
    std::size_t b = 0;
    while (a < q.size() && b < d.size()) {
        if (q[a].first == d[b].first) {
            dot += (q[a].second / nq) * (d[b].second / nd);
            ++a;
            ++b;
        } else if (q[a].first < d[b].first) {
            ++a;
        } else {
            ++b;
        }
    }
    return dot;
}

TfidfIndex TfidfIndex::build(NGramVocab vocab, std::vector<ParagraphId> ids, std::span<const TokenSeq> docs)
{
    if (ids.empty()) {
        throw ValidationError("tfidf: empty candidate set");
    }
    if (ids.size() != docs.size()) {
        throw std::invalid_argument("tfidf: ids/docs size mismatch");
    }
    for (std::size_t i = 1; i < ids.size(); ++i) {
        if (!(ids[i - 1] < ids[i])) {
            throw ValidationError("tfidf: candidate ids must be unique and ascending near " + ids[i].str());
        }
    }
    std::vector<std::vector<Entry>> by_term(vocab.size());
    for (std::uint32_t d = 0; d < docs.size(); ++d) {
        auto v = vectorize(vocab, docs[d]);
        const double n = norm(v);
        if (n == 0.0) {
            continue;
        }
        for (const auto& [i, w] : v) {
            by_term[i].push_back({d, w / n});
        }
    }
    std::vector<std::size_t> offsets{0};
    std::vector<Entry> entries;
    for (auto& list : by_term) {
        entries.insert(entries.end(), list.begin(), list.end());
        offsets.push_back(entries.size());
    }
    return from_parts(std::move(vocab), std::move(ids), std::move(offsets), std::move(entries));
}

TfidfIndex TfidfIndex::build(NGramVocab vocab, const Corpus& corpus, std::span<const ParagraphId> candidates,
                             unsigned threads)
{
    std::vector<TokenSeq> docs(candidates.size());
    parallel_for(candidates.size(), threads, [&](std::size_t i) { docs[i] = tokenize(corpus.get(candidates[i]).text); });
    return build(std::move(vocab), std::vector<ParagraphId>(candidates.begin(), candidates.end()), docs);
}

TfidfIndex TfidfIndex::from_parts(NGramVocab vocab, std::vector<ParagraphId> ids, std::vector<std::size_t> offsets,
                                  std::vector<Entry> entries)
{
    if (ids.empty() || offsets.size() != vocab.size() + 1 || offsets.back() != entries.size()) {
        throw ValidationError("tfidf snapshot: inconsistent section sizes");
    }
    for (const auto& e : entries) {
        if (e.doc >= ids.size() || !std::isfinite(e.weight)) {
            throw ValidationError("tfidf snapshot: entry out of range");
        }
    }
    TfidfIndex idx;
    idx.vocab_ = std::move(vocab);
    idx.ids_ = std::move(ids);
    idx.offsets_ = std::move(offsets);
    idx.entries_ = std::move(entries);
    return idx;
}

PoolScores TfidfIndex::score_all(const TokenSeq& query) const
{
    std::vector<double> scores(ids_.size(), 0.0);
    auto q = vectorize(vocab_, query);
    const double nq = norm(q);
    if (nq == 0.0) {
        return PoolScores(std::move(scores));
    }
    for (const auto& [i, w] : q) {
        const double qw = w / nq;
        for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
            scores[entries_[e].doc] += qw * entries_[e].weight;
        }
    }
    return PoolScores(std::move(scores));
}

std::vector<ScoredDoc> TfidfIndex::top_k(const TokenSeq& query, std::size_t k) const
{
    auto scores = score_all(query);
    std::vector<ScoredDoc> out;
    for (auto pos : scores.top_k(k)) {
        out.push_back({ids_[pos], scores.score(pos)});
    }
    return out;
}

}  // namespace lexgap
