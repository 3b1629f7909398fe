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

#include "lexgap/dense.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "binary_io.hpp"
#include "lexgap/error.hpp"
#include "lexgap/simd/dot.hpp"

namespace lexgap {

EmbeddingStore::EmbeddingStore(std::size_t dim, std::string model_tag) : dim_(dim), model_tag_(std::move(model_tag)) {}

void EmbeddingStore::add(const ParagraphId& id, std::span<const float> vector, std::size_t record)
{
    const std::string where = record != 0 ? "record " + std::to_string(record) + ": " : std::string{};
    if (dim_ == 0) {
        if (vector.empty()) {
            throw ValidationError(where + "empty vector for " + id.str());
        }
        dim_ = vector.size();
    }
    if (vector.size() != dim_) {
        throw ValidationError(where + "dimension mismatch for " + id.str() + ": expected " + std::to_string(dim_) +
                              ", got " + std::to_string(vector.size()));
    }
    for (std::size_t i = 0; i < vector.size(); ++i) {
        if (!std::isfinite(vector[i])) {
            throw ValidationError(where + "non-finite value at component " + std::to_string(i) + " of " + id.str());
        }
    }
    if (!index_.emplace(id, ids_.size()).second) {
        throw ValidationError(where + "duplicate embedding id " + id.str());
    }
    ids_.push_back(id);
    data_.insert(data_.end(), vector.begin(), vector.end());
}

std::optional<std::size_t> EmbeddingStore::find(const ParagraphId& id) const
{
    auto it = index_.find(id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

ParagraphId parse_embedding_id(const std::string& text, const std::string& source, std::size_t record)
{
    auto id = ParagraphId::parse(text);
    if (!id) {
        throw RecordError(source, record, "id", "not a '<celex>:<number>' id: " + text);
    }
    return *id;
}

EmbeddingStore read_ndjson(std::istream& in, const std::string& source)
{
    EmbeddingStore store;
    std::string line;
    std::size_t lineno = 0;
    std::size_t record = 0;
    std::vector<float> buf;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        ++record;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw RecordError(source, lineno, "", std::string("malformed JSON: ") + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj["id"].is_string()) {
            throw RecordError(source, lineno, "id", "missing or not a string");
        }
        if (!obj.contains("vector") || !obj["vector"].is_array()) {
            throw RecordError(source, lineno, "vector", "missing or not an array");
        }
        auto id = parse_embedding_id(obj["id"].get<std::string>(), source, lineno);
        buf.clear();
        for (const auto& v : obj["vector"]) {
            if (!v.is_number()) {
                throw RecordError(source, lineno, "vector", "non-numeric component");
            }
            buf.push_back(static_cast<float>(v.get<double>()));
        }
        store.add(id, buf, record);
    }
    return store;
}

EmbeddingStore read_emb1(std::istream& in, const std::string& source)
{
    binio::Reader r(in, source);
    r.bytes(kEmbeddingMagic.size());
    const auto dim = r.u32();
    if (dim == 0) {
        throw ValidationError(source + ": dimension 0 in header");
    }
    EmbeddingStore store(dim);
    std::vector<float> buf(dim);
    std::size_t record = 0;
    while (!r.at_end()) {
        ++record;
        auto id = parse_embedding_id(r.string(), source, record);
        for (auto& v : buf) {
            v = r.f32();
        }
        store.add(id, buf, record);
    }
    return store;
}

void write_float(std::ostream& out, float v)
{
    if (v == 0.0f && std::signbit(v)) {
        out << "-0.0";  // a bare -0 parses back as integer zero
        return;
    }
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.write(buf, end - buf);
}

}  // namespace

EmbeddingStore read_embeddings(std::istream& in, const std::string& source)
{
    char head[4] = {};
    in.read(head, 4);
    const auto got = static_cast<std::size_t>(in.gcount());
    in.clear();
    in.seekg(0);
    if (got == 4 && std::string_view(head, 4) == kEmbeddingMagic) {
        return read_emb1(in, source);
    }
    // NDJSON records start with '{' (after optional whitespace).
    auto first = std::string_view(head, got).find_first_not_of(" \t\r\n");
    if (got > 0 && first != std::string_view::npos && head[first] != '{') {
        throw ValidationError(source + ": unknown embedding format (expected EMB1 magic or NDJSON)");
    }
    return read_ndjson(in, source);
}

EmbeddingStore read_embeddings_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    auto store = read_embeddings(in, path);
    store.set_model_tag(std::filesystem::path(path).stem().string());
    return store;
}

void write_embeddings(std::ostream& out, const EmbeddingStore& store, EmbeddingFormat format)
{
    if (format == EmbeddingFormat::emb1) {
        binio::put_bytes(out, kEmbeddingMagic);
        binio::put_u32(out, static_cast<std::uint32_t>(store.dim()));
        for (std::size_t r = 0; r < store.size(); ++r) {
            binio::put_string(out, store.ids()[r].str());
            for (float v : store.vector(r)) {
                binio::put_f32(out, v);
            }
        }
        return;
    }
    for (std::size_t r = 0; r < store.size(); ++r) {
        out << "{\"id\":" << nlohmann::json(store.ids()[r].str()).dump() << ",\"vector\":[";
        auto vec = store.vector(r);
        for (std::size_t i = 0; i < vec.size(); ++i) {
            if (i != 0) {
                out << ',';
            }
            write_float(out, vec[i]);
        }
        out << "]}\n";
    }
}

void write_embeddings_file(const std::string& path, const EmbeddingStore& store, EmbeddingFormat format)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path);
    }
    write_embeddings(out, store, format);
}

double cosine(std::span<const float> u, std::span<const float> v)
{
    if (u.size() != v.size()) {
        throw std::invalid_argument("cosine: dimension mismatch");
    }
    const double uv = simd::dot(u.data(), v.data(), u.size());
    const double uu = simd::dot(u.data(), u.data(), u.size());
    const double vv = simd::dot(v.data(), v.data(), v.size());
    if (uu == 0.0 || vv == 0.0) {
        return 0.0;
    }
    return uv / (std::sqrt(uu) * std::sqrt(vv));
}

DenseRanker::DenseRanker(const EmbeddingStore& store, std::span<const ParagraphId> candidates) : dim_(store.dim())
{
    std::vector<std::string> missing;
    ids_.reserve(candidates.size());
    rows_.reserve(candidates.size() * dim_);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (i > 0 && !(candidates[i - 1] < candidates[i])) {
            throw ValidationError("dense: candidate ids must be unique and ascending near " + candidates[i].str());
        }
        auto row = store.find(candidates[i]);
        if (!row) {
            missing.push_back(candidates[i].str());
            continue;
        }
        auto v = store.vector(*row);
        ids_.push_back(candidates[i]);
        rows_.insert(rows_.end(), v.begin(), v.end());
    }
    if (!missing.empty()) {
        std::string msg = "dense: " + std::to_string(missing.size()) + " candidate(s) without embeddings:";
        for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
            msg += " " + missing[i];
        }
        if (missing.size() > 20) {
            msg += " ...";
        }
        throw ValidationError(msg);
    }
    norms_.resize(ids_.size());
    for (std::size_t r = 0; r < ids_.size(); ++r) {
        const float* row = rows_.data() + r * dim_;
        norms_[r] = std::sqrt(simd::dot(row, row, dim_));
    }
}

PoolScores DenseRanker::score_all(std::span<const float> query) const
{
    if (query.size() != dim_) {
        throw ValidationError("dense: query dimension " + std::to_string(query.size()) + " does not match pool dimension " +
                              std::to_string(dim_));
    }
    std::vector<double> scores(ids_.size());
    simd::dot_rows(query.data(), rows_.data(), ids_.size(), dim_, scores.data());
    const double qn = std::sqrt(simd::dot(query.data(), query.data(), dim_));
    for (std::size_t r = 0; r < scores.size(); ++r) {
        scores[r] = (qn == 0.0 || norms_[r] == 0.0) ? 0.0 : scores[r] / (qn * norms_[r]);
    }
    return PoolScores(std::move(scores));
}

std::vector<ScoredDoc> DenseRanker::top_k(std::span<const float> query, std::size_t k) const
{
    auto scores = score_all(query);
    std::vector<ScoredDoc> out;
    for (auto pos : scores.top_k(k)) {
        out.push_back({ids_[pos], scores.score(pos)});
    }
    return out;
}

std::vector<ScoredDoc> dense_top_k(const EmbeddingStore& query_store, const ParagraphId& query_id,
                                   const EmbeddingStore& candidate_store, std::span<const ParagraphId> candidates,
                                   std::size_t k)
{
    auto row = query_store.find(query_id);
    if (!row) {
        throw ValidationError("dense: query " + query_id.str() + " has no embedding");
    }
    DenseRanker ranker(candidate_store, candidates);
    return ranker.top_k(query_store.vector(*row), k);
}

}  // namespace lexgap
