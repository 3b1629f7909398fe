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

#include "lexgap/gap.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "lexgap/error.hpp"
#include "lexgap/parallel.hpp"
#include "lexgap/text_overlap.hpp"

namespace lexgap {

namespace {

double mean_of(std::span<const double> values)
{
    CompensatedSum s;
    for (double v : values) {
        s.add(v);
    }
    return s.value() / static_cast<double>(values.size());
}

const TaskQuery& require_query(const RetrievalTask& task, const ParagraphId& query)
{
    const TaskQuery* q = task.find(query);
    if (q == nullptr) {
        throw ValidationError("query " + query.str() + " is not in the task");
    }
    return *q;
}

GroupStats group_stats(const std::vector<double>& values)
{
    return GroupStats{mean_std(values), median(values)};
}

nlohmann::json optional_json(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const GroupStats& g)
{
    return {{"mean", optional_json(g.summary.mean)},
            {"std", optional_json(g.summary.std)},
            {"median", optional_json(g.median)},
            {"n", g.summary.n}};
}

nlohmann::json ids_json(const std::vector<ParagraphId>& ids)
{
    auto arr = nlohmann::json::array();
    for (const auto& id : ids) {
        arr.push_back(id.str());
    }
    return arr;
}

}  // namespace

SimilarityProfile similarity_profile(const TokenSeq& query, std::span<const TokenSeq> relevant)
{
    if (relevant.empty()) {
        throw ValidationError("similarity profile needs at least one relevant paragraph");
    }
    std::vector<double> edit;
    std::vector<double> lcs;
    std::array<std::vector<double>, kCommonNCount> common;
    for (const auto& doc : relevant) {
        edit.push_back(static_cast<double>(word_edit_distance(query, doc)));
        lcs.push_back(static_cast<double>(lcs_length(query, doc)));
        for (std::size_t n = kMinCommonN; n <= kMaxCommonN; ++n) {
            common[n - kMinCommonN].push_back(static_cast<double>(common_ngram_count(query, doc, n)));
        }
    }
    SimilarityProfile p;
    p.mean_edit_distance = mean_of(edit);
    p.lcs = mean_of(lcs);
    for (std::size_t i = 0; i < kCommonNCount; ++i) {
        p.common_ngrams[i] = mean_of(common[i]);
    }
    p.query_len = query.size();
    return p;
}

SimilarityProfile similarity_profile(const RetrievalTask& task, const ParagraphId& query, const Corpus& corpus)
{
    const TaskQuery& q = require_query(task, query);
    std::vector<TokenSeq> relevant;
    relevant.reserve(q.relevant.size());
    for (const auto& id : q.relevant) {
        relevant.push_back(tokenize(corpus.get(id).text));
    }
    SimilarityProfile p = similarity_profile(tokenize(corpus.get(query).text), relevant);
    p.query = query;
    return p;
}

ScenarioPartition partition_scenarios(const RetrievalTask& task, const RunRanking& run_a, const RunRanking& run_b,
                                      const MetricSpec& metric)
{
    ScenarioPartition out;
    out.metric = metric;
    for (const auto& q : task.queries) {
        const QueryRun* a = run_a.find(q.id);
        const QueryRun* b = run_b.find(q.id);
        if (a == nullptr || b == nullptr) {
            throw ValidationError("query " + q.id.str() + " missing from run " +
                                  (a == nullptr ? "A (" + run_a.run_tag + ")" : "B (" + run_b.run_tag + ")"));
        }
        const double va = metric.evaluate(*a, q.relevant);
        const double vb = metric.evaluate(*b, q.relevant);
        if (va == 1.0 && vb == 1.0) {
            out.both_perfect.push_back(q.id);
        } else if (va == 1.0 && vb == 0.0) {
            out.a_only.push_back(q.id);
        } else if (va == 0.0 && vb == 1.0) {
            out.b_only.push_back(q.id);
        } else {
            out.neither.push_back(q.id);
        }
    }
    return out;
}

GapReport gap_report(const RetrievalTask& task, const RunRanking& run_a, const RunRanking& run_b,
                     const MetricSpec& metric, const Corpus& corpus, unsigned threads)
{
    GapReport report;
    report.run_a_tag = run_a.run_tag;
    report.run_b_tag = run_b.run_tag;
    report.partition = partition_scenarios(task, run_a, run_b, metric);

    auto profiles_of = [&](const std::vector<ParagraphId>& ids) {
        std::vector<SimilarityProfile> out(ids.size());
        parallel_for(ids.size(), threads, [&](std::size_t i) { out[i] = similarity_profile(task, ids[i], corpus); });
        return out;
    };
    const auto both = profiles_of(report.partition.both_perfect);
    const auto a_only = profiles_of(report.partition.a_only);

    auto compare = [&](std::string name, auto field) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const auto& p : a_only) {
            xs.push_back(field(p));
        }
        for (const auto& p : both) {
            ys.push_back(field(p));
        }
        QuantityComparison c;
        c.name = std::move(name);
        c.a_only = group_stats(xs);
        c.both_perfect = group_stats(ys);
        if (xs.size() < 2 || ys.size() < 2) {
            c.skipped_reason = "group too small (a_only=" + std::to_string(xs.size()) +
                               ", both_perfect=" + std::to_string(ys.size()) + ")";
        } else {
            try {
                c.test = welch_t_test(xs, ys);
            } catch (const ValidationError& e) {
                c.skipped_reason = e.what();
            }
        }
        if (!c.test) {
            report.notices.push_back("t-test skipped for " + c.name + ": " + c.skipped_reason);
        }
        report.quantities.push_back(std::move(c));
    };

    compare("edit_distance", [](const SimilarityProfile& p) { return p.mean_edit_distance; });
    compare("lcs", [](const SimilarityProfile& p) { return p.lcs; });
    compare("query_len", [](const SimilarityProfile& p) { return static_cast<double>(p.query_len); });
    for (std::size_t n = kMinCommonN; n <= kMaxCommonN; ++n) {
        compare("common_" + std::to_string(n) + "grams", [n](const SimilarityProfile& p) { return p.common(n); });
    }
    return report;
}

nlohmann::json to_json(const GapReport& report)
{
    nlohmann::json groups = {
        {"both_perfect", ids_json(report.partition.both_perfect)},
        {"a_only", ids_json(report.partition.a_only)},
        {"b_only", ids_json(report.partition.b_only)},
        {"neither", ids_json(report.partition.neither)},
    };
    nlohmann::json counts = {
        {"both_perfect", report.partition.both_perfect.size()},
        {"a_only", report.partition.a_only.size()},
        {"b_only", report.partition.b_only.size()},
        {"neither", report.partition.neither.size()},
    };
    nlohmann::json quantities = nlohmann::json::object();
    for (const auto& q : report.quantities) {
        nlohmann::json entry = {{"both_perfect", to_json(q.both_perfect)}, {"a_only", to_json(q.a_only)}};
        if (q.test) {
            entry["test"] = {{"t_statistic", q.test->t_statistic},
                             {"degrees_of_freedom", q.test->degrees_of_freedom},
                             {"p_value", q.test->p_value},
                             {"significant_at_5pct", q.test->significant_at_5pct}};
        } else {
            entry["test"] = nullptr;
            entry["skipped"] = q.skipped_reason;
        }
        quantities[q.name] = std::move(entry);
    }
    return {{"run_a", report.run_a_tag},
            {"run_b", report.run_b_tag},
            {"metric", report.partition.metric.name()},
            {"group_sizes", counts},
            {"groups", groups},
            {"quantities", quantities},
            {"notices", report.notices}};
}

void write_ngram_curves(std::ostream& out, const GapReport& report)
{
    auto num = [](const std::optional<double>& v) {
        if (!v) {
            return std::string();
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", *v);
        return std::string(buf);
    };
    out << "n,group,mean,std\n";
    for (std::size_t n = kMinCommonN; n <= kMaxCommonN; ++n) {
        const std::string name = "common_" + std::to_string(n) + "grams";
        auto it = std::find_if(report.quantities.begin(), report.quantities.end(),
                               [&](const QuantityComparison& q) { return q.name == name; });
        if (it == report.quantities.end()) {
            continue;
        }
        out << n << ",both_perfect," << num(it->both_perfect.summary.mean) << ',' << num(it->both_perfect.summary.std)
            << '\n';
        out << n << ",a_only," << num(it->a_only.summary.mean) << ',' << num(it->a_only.summary.std) << '\n';
    }
}

}  // namespace lexgap
