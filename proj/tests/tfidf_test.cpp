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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "lexgap/tfidf.hpp"

using namespace lexgap;

namespace {

std::vector<ParagraphId> make_ids(std::size_t n)
{
    std::vector<ParagraphId> ids;
    for (std::size_t i = 1; i <= n; ++i) {
        ids.push_back(ParagraphId{"D", static_cast<std::uint32_t>(i)});
    }
    return ids;
}

TokenSeq random_tokens(std::mt19937_64& rng, std::size_t max_len, std::size_t vocab)
{
    TokenSeq t(rng() % (max_len + 1));
    for (auto& w : t) {
        w = "t" + std::to_string(rng() % vocab);
    }
    return t;
}

std::vector<std::string> windows(const TokenSeq& t, std::size_t n)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i + n <= t.size(); ++i) {
        std::string g = t[i];
        for (std::size_t j = 1; j < n; ++j) {
            g += " " + t[i + j];
        }
        out.push_back(g);
    }
    return out;
}

// Dense reference: explicit vocabulary selection and full-length vectors.
struct DenseModel {
    std::vector<std::string> vocab;
    std::vector<double> idf;

    DenseModel(const std::vector<TokenSeq>& train, std::size_t n, std::size_t k)
    {
        std::map<std::string, std::pair<std::size_t, std::size_t>> stats;  // freq, df
        for (const auto& d : train) {
            auto w = windows(d, n);
            for (const auto& g : w) {
                ++stats[g].first;
            }
            std::sort(w.begin(), w.end());
            w.erase(std::unique(w.begin(), w.end()), w.end());
            for (const auto& g : w) {
                ++stats[g].second;
            }
        }
        std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> all(stats.begin(), stats.end());
        std::stable_sort(all.begin(), all.end(),
                         [](const auto& a, const auto& b) { return a.second.first > b.second.first; });
        for (std::size_t i = 0; i < std::min(k, all.size()); ++i) {
            vocab.push_back(all[i].first);
            idf.push_back(std::log((1.0 + static_cast<double>(train.size())) /
                                   (1.0 + static_cast<double>(all[i].second.second))) +
                          1.0);
        }
    }

    std::vector<double> vec(const TokenSeq& t, std::size_t n) const
    {
        std::vector<double> v(vocab.size(), 0.0);
        for (const auto& g : windows(t, n)) {
            auto it = std::find(vocab.begin(), vocab.end(), g);
            if (it != vocab.end()) {
                v[static_cast<std::size_t>(it - vocab.begin())] += 1.0;
            }
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] *= idf[i];
        }
        return v;
    }

    static double cosine(const std::vector<double>& a, const std::vector<double>& b)
    {
        double dot = 0;
        double na = 0;
        double nb = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            dot += a[i] * b[i];
            na += a[i] * a[i];
            nb += b[i] * b[i];
        }
        return na == 0 || nb == 0 ? 0.0 : dot / std::sqrt(na * nb);
    }
};

}  // namespace

TEST_CASE("vocabulary order and truncation")
{
    std::vector<TokenSeq> train = {{"b", "a", "b"}, {"c", "a"}, {"b"}};
    auto v = build_tfidf_vocab(train, 1, 2);
    REQUIRE(v.size() == 2);
    CHECK(v[0].gram == "b");
    CHECK(v[0].frequency == 3);
    CHECK(v[0].df == 2);
    CHECK(v[1].gram == "a");
    CHECK(v.find("c") == -1);
    CHECK(v.idf(0) == doctest::Approx(std::log(4.0 / 3.0) + 1.0));

    std::vector<TokenSeq> tie = {{"y", "x"}};
    auto t = build_tfidf_vocab(tie, 1, 1);
    CHECK(t[0].gram == "x");  // equal frequency: lexicographic

    auto bi = build_tfidf_vocab(train, 2, 10);
    CHECK(bi.find("b a") >= 0);
    CHECK(bi.find("a") == -1);  // bigram vocabulary has no unigrams
    CHECK(joined_ngrams({"a", "b", "c"}, 2) == std::vector<std::string>{"a b", "b c"});
}

TEST_CASE("identical texts score 1, disjoint 0")
{
    std::vector<TokenSeq> train = {{"a", "b", "c"}, {"d", "e"}};
    auto v = build_tfidf_vocab(train, 1, 10);
    CHECK(tfidf_score(v, {"a", "b"}, {"a", "b"}) == doctest::Approx(1.0));
    CHECK(tfidf_score(v, {"a"}, {"d"}) == 0.0);
    CHECK(tfidf_score(v, {"zz"}, {"a"}) == 0.0);
}

TEST_CASE("index scores equal a dense-vector oracle")
{
    std::mt19937_64 rng(99);
    for (int inst = 0; inst < 200; ++inst) {
        const std::size_t n = 1 + (inst % 2);
        const std::size_t k = 3 + rng() % 20;
        std::vector<TokenSeq> train;
        for (int i = 0; i < 6; ++i) {
            train.push_back(random_tokens(rng, 12, 8));
        }
        std::vector<TokenSeq> pool;
        const std::size_t pool_size = 1 + rng() % 10;
        for (std::size_t i = 0; i < pool_size; ++i) {
            pool.push_back(random_tokens(rng, 12, 9));
        }
        const TokenSeq query = random_tokens(rng, 10, 9);
        DenseModel ref(train, n, k);
        auto vocab = build_tfidf_vocab(train, n, k);
        REQUIRE(vocab.size() == ref.vocab.size());
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            CHECK(vocab[i].gram == ref.vocab[i]);
        }
        auto idx = TfidfIndex::build(vocab, make_ids(pool_size), pool);
        auto scores = idx.score_all(query);
        const auto qv = ref.vec(query, n);
        for (std::size_t d = 0; d < pool_size; ++d) {
            const double expect = DenseModel::cosine(qv, ref.vec(pool[d], n));
            CHECK(std::abs(scores.score(d) - expect) <= 1e-12);
            CHECK(std::abs(tfidf_score(vocab, query, pool[d]) - expect) <= 1e-12);
        }
    }
}

TEST_CASE("top_k tie order")
{
    std::vector<TokenSeq> train = {{"a", "b"}};
    auto vocab = build_tfidf_vocab(train, 1, 10);
    std::vector<TokenSeq> pool = {{"b"}, {"a"}, {"a"}, {"q"}};
    auto idx = TfidfIndex::build(vocab, make_ids(4), pool);
    auto top = idx.top_k({"a"}, 4);
    REQUIRE(top.size() == 4);
    CHECK(top[0].doc.number == 2);
    CHECK(top[1].doc.number == 3);
    CHECK(top[2].doc.number == 1);
    CHECK(top[3].doc.number == 4);
}
