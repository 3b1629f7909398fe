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

#include "lexgap/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "lexgap/error.hpp"
#include "lexgap/tokenizer.hpp"

namespace lexgap {

using nlohmann::json;

Corpus::Corpus(std::vector<Paragraph> paragraphs) : paragraphs_(std::move(paragraphs))
{
    std::sort(paragraphs_.begin(), paragraphs_.end(),
              [](const Paragraph& a, const Paragraph& b) { return a.id < b.id; });
    index_.reserve(paragraphs_.size());
    for (DocIndex i = 0; i < paragraphs_.size(); ++i) {
        if (!index_.emplace(paragraphs_[i].id, i).second) {
            throw ValidationError("duplicate paragraph id " + paragraphs_[i].id.str());
        }
    }
}

std::optional<DocIndex> Corpus::find(const ParagraphId& id) const
{
    auto it = index_.find(id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

DocIndex Corpus::at(const ParagraphId& id) const
{
    auto found = find(id);
    if (!found) {
        throw ValidationError("unknown paragraph id " + id.str());
    }
    return *found;
}

CitationGraph::CitationGraph(std::size_t node_count, std::vector<CitationEdge> edges) : edges_(std::move(edges))
{
    std::sort(edges_.begin(), edges_.end());
    auto last = std::unique(edges_.begin(), edges_.end());
    duplicates_ = static_cast<std::size_t>(edges_.end() - last);
    edges_.erase(last, edges_.end());

    out_offsets_.assign(node_count + 1, 0);
    in_offsets_.assign(node_count + 1, 0);
    for (const auto& e : edges_) {
        ++out_offsets_[e.citing + 1];
        ++in_offsets_[e.cited + 1];
    }
    for (std::size_t i = 0; i < node_count; ++i) {
        out_offsets_[i + 1] += out_offsets_[i];
        in_offsets_[i + 1] += in_offsets_[i];
    }
}

std::vector<DocIndex> CitationGraph::cited_by(DocIndex d) const
{
    // edges_ is sorted by (citing, cited) so the out-edges of d are contiguous.
    std::vector<DocIndex> out;
    out.reserve(out_degree(d));
    for (std::size_t i = out_offsets_[d]; i < out_offsets_[d + 1]; ++i) {
        out.push_back(edges_[i].cited);
    }
    return out;
}

std::string format_date(const std::chrono::year_month_day& d)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view text)
{
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        return std::nullopt;
    }
    auto field = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
        int v = 0;
        auto sv = text.substr(pos, len);
        auto [end, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec != std::errc{} || end != sv.data() + sv.size()) {
            return std::nullopt;
        }
        return v;
    };
    auto y = field(0, 4);
    auto m = field(5, 2);
    auto d = field(8, 2);
    if (!y || !m || !d) {
        return std::nullopt;
    }
    std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                                    std::chrono::day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) {
        return std::nullopt;
    }
    return ymd;
}

namespace {

bool blank(std::string_view s)
{
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

const json& require(const json& obj, const char* key, json::value_t type, const std::string& src, std::size_t line)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw RecordError(src, line, key, "missing");
    }
    bool ok = it->type() == type ||
              (type == json::value_t::number_unsigned && it->type() == json::value_t::number_integer);
    if (!ok) {
        throw RecordError(src, line, key, std::string("expected ") + json(type).type_name() + ", got " +
                                              it->type_name());
    }
    return *it;
}

json parse_line(const std::string& line, const std::string& src, std::size_t lineno)
{
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw RecordError(src, lineno, "", std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) {
        throw RecordError(src, lineno, "", "record is not a JSON object");
    }
    return obj;
}

ParagraphId parse_id_field(const json& obj, const char* key, const std::string& src, std::size_t lineno)
{
    const auto& v = require(obj, key, json::value_t::string, src, lineno);
    auto id = ParagraphId::parse(v.get_ref<const std::string&>());
    if (!id) {
        throw RecordError(src, lineno, key, "not a '<celex>:<number>' id: " + v.get<std::string>());
    }
    return *id;
}

}  // namespace

Corpus ingest_paragraphs(std::istream& in, std::string_view source)
{
    const std::string src(source);
    std::vector<Paragraph> out;
    std::unordered_map<ParagraphId, std::size_t> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) {
            continue;
        }
        json obj = parse_line(line, src, lineno);
        Paragraph p;
        p.id = parse_id_field(obj, "id", src, lineno);
        const auto& celex = require(obj, "celex", json::value_t::string, src, lineno).get_ref<const std::string&>();
        if (celex != p.id.celex) {
            throw RecordError(src, lineno, "celex", "does not match id " + p.id.str());
        }
        const auto& number = require(obj, "number", json::value_t::number_unsigned, src, lineno);
        if (number.get<std::int64_t>() != static_cast<std::int64_t>(p.id.number)) {
            throw RecordError(src, lineno, "number", "does not match id " + p.id.str());
        }
        p.title = require(obj, "title", json::value_t::string, src, lineno).get<std::string>();
        const auto& date = require(obj, "date", json::value_t::string, src, lineno).get_ref<const std::string&>();
        auto ymd = parse_date(date);
        if (!ymd) {
            throw RecordError(src, lineno, "date", "not a valid YYYY-MM-DD date: " + date);
        }
        p.date = *ymd;
        p.text = require(obj, "text", json::value_t::string, src, lineno).get<std::string>();
        if (blank(p.text)) {
            throw RecordError(src, lineno, "text", "empty paragraph text");
        }
        if (auto [it, inserted] = seen.emplace(p.id, lineno); !inserted) {
            throw RecordError(src, lineno, "id",
                              "duplicate id " + p.id.str() + " (first seen on line " + std::to_string(it->second) + ")");
        }
        out.push_back(std::move(p));
    }
    return Corpus(std::move(out));
}

Corpus ingest_paragraphs_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    return ingest_paragraphs(in, path);
}

CitationGraph ingest_citations(std::istream& in, const Corpus& corpus, std::string_view source)
{
    const std::string src(source);
    std::vector<CitationEdge> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) {
            continue;
        }
        json obj = parse_line(line, src, lineno);
        auto citing = parse_id_field(obj, "citing", src, lineno);
        auto cited = parse_id_field(obj, "cited", src, lineno);
        auto ci = corpus.find(citing);
        if (!ci) {
            throw RecordError(src, lineno, "citing", "unknown paragraph id " + citing.str());
        }
        auto cd = corpus.find(cited);
        if (!cd) {
            throw RecordError(src, lineno, "cited", "unknown paragraph id " + cited.str());
        }
        if (*ci == *cd) {
            throw RecordError(src, lineno, "cited", "self-citation of " + cited.str());
        }
        edges.push_back({*ci, *cd});
    }
    return CitationGraph(corpus.size(), std::move(edges));
}

CitationGraph ingest_citations_file(const std::string& path, const Corpus& corpus)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    return ingest_citations(in, corpus, path);
}

CorpusStats corpus_stats(const Corpus& corpus, const CitationGraph& graph)
{
    CorpusStats s;
    s.unique_paragraphs = corpus.size();
    s.citation_count = graph.edge_count();
    s.duplicate_citations_collapsed = graph.duplicates_collapsed();

    // Paragraphs are id-sorted, so each decision is a contiguous run.
    std::vector<double> per_decision;
    std::vector<std::size_t> decision_of(corpus.size());
    for (DocIndex i = 0; i < corpus.size(); ++i) {
        if (i == 0 || corpus[i].id.celex != corpus[i - 1].id.celex) {
            per_decision.push_back(0.0);
        }
        per_decision.back() += 1.0;
        decision_of[i] = per_decision.size() - 1;
    }
    s.unique_decisions = per_decision.size();
    s.mean_paragraphs_per_decision = mean_std(per_decision);

    std::vector<double> words;
    words.reserve(corpus.size());
    for (const auto& p : corpus.paragraphs()) {
        words.push_back(static_cast<double>(count_tokens(p.text)));
    }
    s.mean_words_per_paragraph = mean_std(words);

    std::vector<double> inbound;
    std::vector<double> outbound;
    std::vector<double> dec_in(per_decision.size(), 0.0);
    std::vector<double> dec_out(per_decision.size(), 0.0);
    std::vector<bool> dec_touched(per_decision.size(), false);
    if (graph.node_count() == corpus.size()) {
        for (DocIndex i = 0; i < corpus.size(); ++i) {
            auto in = graph.in_degree(i);
            auto out = graph.out_degree(i);
            if (in > 0) {
                inbound.push_back(static_cast<double>(in));
            }
            if (out > 0) {
                outbound.push_back(static_cast<double>(out));
            }
            dec_in[decision_of[i]] += static_cast<double>(in);
            dec_out[decision_of[i]] += static_cast<double>(out);
            if (in + out > 0) {
                dec_touched[decision_of[i]] = true;
            }
        }
    }
    s.mean_inbound = mean_std(inbound);
    s.mean_outbound = mean_std(outbound);
    std::vector<double> din;
    std::vector<double> dout;
    for (std::size_t d = 0; d < per_decision.size(); ++d) {
        if (dec_in[d] > 0) {
            din.push_back(dec_in[d]);
        }
        if (dec_out[d] > 0) {
            dout.push_back(dec_out[d]);
        }
    }
    s.decision_level_inbound = mean_std(din);
    s.decision_level_outbound = mean_std(dout);
    s.decisions_in_citation_graph =
        static_cast<std::size_t>(std::count(dec_touched.begin(), dec_touched.end(), true));
    return s;
}

namespace {

json to_json(const MeanStd& m)
{
    json j;
    j["mean"] = m.mean ? json(*m.mean) : json(nullptr);
    j["std"] = m.std ? json(*m.std) : json(nullptr);
    j["n"] = m.n;
    return j;
}

}  // namespace

json to_json(const CorpusStats& s)
{
    json j;
    j["unique_decisions"] = s.unique_decisions;
    j["decisions_in_citation_graph"] = s.decisions_in_citation_graph;
    j["unique_paragraphs"] = s.unique_paragraphs;
    j["mean_paragraphs_per_decision"] = to_json(s.mean_paragraphs_per_decision);
    j["mean_words_per_paragraph"] = to_json(s.mean_words_per_paragraph);
    j["citation_count"] = s.citation_count;
    j["duplicate_citations_collapsed"] = s.duplicate_citations_collapsed;
    j["mean_inbound"] = to_json(s.mean_inbound);
    j["mean_outbound"] = to_json(s.mean_outbound);
    j["decision_level_inbound"] = to_json(s.decision_level_inbound);
    j["decision_level_outbound"] = to_json(s.decision_level_outbound);
    return j;
}

std::string render_paragraph(const Paragraph& p)
{
    json j;
    j["id"] = p.id.str();
    j["celex"] = p.id.celex;
    j["number"] = p.id.number;
    j["title"] = p.title;
    j["date"] = format_date(p.date);
    j["text"] = p.text;
    return j.dump();
}

void write_paragraphs(std::ostream& out, const Corpus& corpus, const std::vector<DocIndex>& subset)
{
    for (auto i : subset) {
        out << render_paragraph(corpus[i]) << '\n';
    }
}

std::string render_citation(const Corpus& corpus, const CitationEdge& e)
{
    json j;
    j["citing"] = corpus[e.citing].id.str();
    j["cited"] = corpus[e.cited].id.str();
    return j.dump();
}

}  // namespace lexgap
