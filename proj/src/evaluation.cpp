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

#include "lexgap/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "lexgap/error.hpp"
#include "lexgap/stats.hpp"

namespace lexgap {

namespace {

std::unordered_set<ParagraphId> as_set(std::span<const ParagraphId> relevant)
{
    if (relevant.empty()) {
        throw std::invalid_argument("metric requires a non-empty relevant set");
    }
    return {relevant.begin(), relevant.end()};
}

double discount(std::size_t rank) { return 1.0 / std::log2(static_cast<double>(rank) + 1.0); }

double ideal_dcg(std::size_t relevant, std::size_t k)
{
    double idcg = 0.0;
    for (std::size_t i = 1; i <= std::min(k, relevant); ++i) {
        idcg += discount(i);
    }
    return idcg;
}

}  // namespace

double recall_at_k(std::span<const ParagraphId> ranked, std::span<const ParagraphId> relevant, std::size_t k)
{
    auto rel = as_set(relevant);
    if (k < 1) {
        throw std::invalid_argument("recall_at_k: k must be >= 1");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
        hits += rel.count(ranked[i]);
    }
    return static_cast<double>(hits) / static_cast<double>(rel.size());
}

double ndcg_at_k(std::span<const ParagraphId> ranked, std::span<const ParagraphId> relevant, std::size_t k)
{
    auto rel = as_set(relevant);
    double dcg = 0.0;
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) {
        if (rel.count(ranked[i]) != 0) {
            dcg += discount(i + 1);
        }
    }
    return dcg / ideal_dcg(rel.size(), k);
}

double average_precision(std::span<const ParagraphId> ranked, std::span<const ParagraphId> relevant)
{
    auto rel = as_set(relevant);
    std::vector<std::size_t> ranks;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (rel.count(ranked[i]) != 0) {
            ranks.push_back(i + 1);
        }
    }
    if (ranks.size() != rel.size()) {
        throw ValidationError("average_precision: " + std::to_string(rel.size() - ranks.size()) +
                              " relevant document(s) absent from the ranking");
    }
    return metrics_from_ranks(std::move(ranks)).average_precision;
}

double reciprocal_rank(std::span<const ParagraphId> ranked, std::span<const ParagraphId> relevant)
{
    auto rel = as_set(relevant);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (rel.count(ranked[i]) != 0) {
            return 1.0 / static_cast<double>(i + 1);
        }
    }
    throw ValidationError("reciprocal_rank: no relevant document in the ranking");
}

QueryMetrics metrics_from_ranks(std::vector<std::size_t> ranks)
{
    if (ranks.empty()) {
        throw std::invalid_argument("metrics_from_ranks: no relevant documents");
    }
    std::sort(ranks.begin(), ranks.end());
    const auto n = static_cast<double>(ranks.size());
    QueryMetrics m;
    for (std::size_t c = 0; c < kRecallCutoffs.size(); ++c) {
        auto hits = std::upper_bound(ranks.begin(), ranks.end(), kRecallCutoffs[c]) - ranks.begin();
        m.recall[c] = static_cast<double>(hits) / n;
    }
    double dcg = 0.0;
    double ap = 0.0;
    for (std::size_t j = 0; j < ranks.size(); ++j) {
        if (ranks[j] <= kNdcgCutoff) {
            dcg += discount(ranks[j]);
        }
        ap += static_cast<double>(j + 1) / static_cast<double>(ranks[j]);
    }
    m.ndcg_at_10 = dcg / ideal_dcg(ranks.size(), kNdcgCutoff);
    m.average_precision = ap / n;
    m.reciprocal_rank = 1.0 / static_cast<double>(ranks.front());
    return m;
}

double MetricsReport::recall(std::size_t k) const
{
    for (std::size_t c = 0; c < kRecallCutoffs.size(); ++c) {
        if (kRecallCutoffs[c] == k) {
            return recall_at[c];
        }
    }
    throw std::out_of_range("no recall cutoff " + std::to_string(k));
}

MetricsReport aggregate(std::vector<QueryMetrics> per_query, std::string run_tag)
{
    if (per_query.empty()) {
        throw ValidationError("evaluation: no queries to average");
    }
    std::array<CompensatedSum, kRecallCutoffs.size()> recall;
    CompensatedSum ndcg;
    CompensatedSum ap;
    CompensatedSum rr;
    for (const auto& q : per_query) {
        for (std::size_t c = 0; c < recall.size(); ++c) {
            recall[c].add(q.recall[c]);
        }
        ndcg.add(q.ndcg_at_10);
        ap.add(q.average_precision);
        rr.add(q.reciprocal_rank);
    }
    const auto n = static_cast<double>(per_query.size());
    MetricsReport r;
    for (std::size_t c = 0; c < recall.size(); ++c) {
        r.recall_at[c] = recall[c].value() / n;
    }
    r.ndcg_at_10 = ndcg.value() / n;
    r.map = ap.value() / n;
    r.mrr = rr.value() / n;
    r.query_count = per_query.size();
    r.run_tag = std::move(run_tag);
    r.per_query = std::move(per_query);
    return r;
}

MetricsReport evaluate_run(const RetrievalTask& task, const RunRanking& run)
{
    std::vector<QueryMetrics> per_query;
    per_query.reserve(task.queries.size());
    for (const auto& q : task.queries) {
        const auto* qr = run.find(q.id);
        if (qr == nullptr) {
            throw ValidationError("evaluation: query " + q.id.str() + " is missing from run '" + run.run_tag + "'");
        }
        std::unordered_set<ParagraphId> rel(q.relevant.begin(), q.relevant.end());
        std::vector<std::size_t> ranks;
        for (std::size_t i = 0; i < qr->rows.size() && ranks.size() < rel.size(); ++i) {
            if (rel.count(qr->rows[i].doc) != 0) {
                ranks.push_back(i + 1);
            }
        }
        if (ranks.size() != rel.size()) {
            throw ValidationError("evaluation: run depth insufficient for query " + q.id.str() + ": " +
                                  std::to_string(rel.size() - ranks.size()) +
                                  " relevant document(s) not ranked (MAP/MRR need exhaustive rankings)");
        }
        auto m = metrics_from_ranks(std::move(ranks));
        m.query = q.id;
        per_query.push_back(std::move(m));
    }
    return aggregate(std::move(per_query), run.run_tag);
}

nlohmann::json to_json(const MetricsReport& r)
{
    nlohmann::json j;
    for (std::size_t c = 0; c < kRecallCutoffs.size(); ++c) {
        j["recall@" + std::to_string(kRecallCutoffs[c])] = r.recall_at[c];
    }
    j["ndcg@10"] = r.ndcg_at_10;
    j["map"] = r.map;
    j["mrr"] = r.mrr;
    j["query_count"] = r.query_count;
    return j;
}

void write_per_query_csv(std::ostream& out, const MetricsReport& r)
{
    out << "query_id";
    for (auto k : kRecallCutoffs) {
        out << ",recall@" << k;
    }
    out << ",ndcg@10,ap,rr\n";
    char buf[32];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return buf;
    };
    for (const auto& q : r.per_query) {
        out << q.query.str();
        for (double v : q.recall) {
            out << ',' << num(v);
        }
        out << ',' << num(q.ndcg_at_10);
        out << ',' << num(q.average_precision);
        out << ',' << num(q.reciprocal_rank) << '\n';
    }
}

MetricSpec MetricSpec::parse(const std::string& text)
{
    auto at = text.find('@');
    std::string name = text.substr(0, at);
    std::size_t k = 0;
    if (at != std::string::npos) {
        try {
            std::size_t used = 0;
            k = std::stoul(text.substr(at + 1), &used);
            if (used != text.size() - at - 1) {
                k = 0;
            }
        } catch (const std::exception&) {
            k = 0;
        }
        if (k == 0) {
            throw ValidationError("unsupported metric '" + text + "'");
        }
    }
    MetricSpec m;
    if (name == "recall" && k != 0) {
        m.kind = Kind::recall;
        m.k = k;
    } else if (name == "ndcg" && k != 0) {
        m.kind = Kind::ndcg;
        m.k = k;
    } else if ((name == "map" || name == "ap") && k == 0) {
        m.kind = Kind::average_precision;
    } else if ((name == "mrr" || name == "rr") && k == 0) {
        m.kind = Kind::reciprocal_rank;
    } else {
        throw ValidationError("unsupported metric '" + text + "' (use recall@K, ndcg@K, map or mrr)");
    }
    return m;
}

std::string MetricSpec::name() const
{
    switch (kind) {
    case Kind::recall: return "recall@" + std::to_string(k);
    case Kind::ndcg: return "ndcg@" + std::to_string(k);
    case Kind::average_precision: return "map";
    case Kind::reciprocal_rank: return "mrr";
    }
    return "?";
}

double MetricSpec::pick(const QueryMetrics& m) const
{
    switch (kind) {
    case Kind::recall:
        for (std::size_t c = 0; c < kRecallCutoffs.size(); ++c) {
            if (kRecallCutoffs[c] == k) {
                return m.recall[c];
            }
        }
        throw ValidationError("recall cutoff " + std::to_string(k) + " is not precomputed");
    case Kind::ndcg:
        if (k != kNdcgCutoff) {
            throw ValidationError("ndcg cutoff " + std::to_string(k) + " is not precomputed");
        }
        return m.ndcg_at_10;
    case Kind::average_precision: return m.average_precision;
    case Kind::reciprocal_rank: return m.reciprocal_rank;
    }
    return 0.0;
}

double MetricSpec::evaluate(const QueryRun& run, std::span<const ParagraphId> relevant) const
{
    std::vector<ParagraphId> ranked;
    ranked.reserve(run.rows.size());
    for (const auto& r : run.rows) {
        ranked.push_back(r.doc);
    }
    switch (kind) {
    case Kind::recall:
    case Kind::ndcg: {
        // A shallow run still decides cutoff metrics if it reaches the cutoff.
        if (ranked.size() < k) {
            std::unordered_set<ParagraphId> rel(relevant.begin(), relevant.end());
            std::size_t found = 0;
            for (const auto& d : ranked) {
                found += rel.count(d);
            }
            if (found != rel.size()) {
                throw ValidationError("run depth " + std::to_string(ranked.size()) + " too shallow for " + name() +
                                      " on query " + run.query.str());
            }
        }
        return kind == Kind::recall ? recall_at_k(ranked, relevant, k) : ndcg_at_k(ranked, relevant, k);
    }
    case Kind::average_precision: return average_precision(ranked, relevant);
    case Kind::reciprocal_rank: return reciprocal_rank(ranked, relevant);
    }
    return 0.0;
}

}  // namespace lexgap
