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

#include "lexgap/lexical_snapshot.hpp"

#include <fstream>

#include "binary_io.hpp"
#include "lexgap/error.hpp"

namespace lexgap {

namespace {

constexpr std::uint8_t kMethodBm25 = 1;
constexpr std::uint8_t kMethodTfidf = 2;

void put_ids(std::ostream& out, const std::vector<ParagraphId>& ids)
{
    binio::put_u64(out, ids.size());
    for (const auto& id : ids) {
        binio::put_string(out, id.str());
    }
}

std::vector<ParagraphId> get_ids(binio::Reader& r, const std::string& source)
{
    auto n = r.u64();
    std::vector<ParagraphId> ids;
    ids.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        auto s = r.string();
        auto id = ParagraphId::parse(s);
        if (!id) {
            throw ValidationError(source + ": bad paragraph id '" + s + "' in snapshot");
        }
        ids.push_back(std::move(*id));
    }
    return ids;
}

void save_bm25(std::ostream& out, const Bm25Index& idx)
{
    binio::put_u8(out, kMethodBm25);
    binio::put_f64(out, idx.params().k1);
    binio::put_f64(out, idx.params().b);
    binio::put_u8(out, idx.params().idf_floor0 ? 1 : 0);
    put_ids(out, idx.doc_ids());
    binio::put_u64(out, idx.terms().size());
    for (const auto& t : idx.terms()) {
        binio::put_string(out, t);
    }
    for (auto len : idx.doc_lengths()) {
        binio::put_u32(out, len);
    }
    binio::put_f64(out, idx.avg_len());
    for (auto off : idx.posting_offsets()) {
        binio::put_u64(out, off);
    }
    for (const auto& p : idx.posting_data()) {
        binio::put_u32(out, p.doc);
        binio::put_u32(out, p.tf);
    }
}

Bm25Index load_bm25(binio::Reader& r, const std::string& source)
{
    Bm25Params params;
    params.k1 = r.f64();
    params.b = r.f64();
    params.idf_floor0 = r.u8() != 0;
    auto ids = get_ids(r, source);
    auto term_count = r.u64();
    std::vector<std::string> terms;
    terms.reserve(term_count);
    for (std::uint64_t i = 0; i < term_count; ++i) {
        terms.push_back(r.string());
    }
    std::vector<std::uint32_t> doc_len(ids.size());
    for (auto& len : doc_len) {
        len = r.u32();
    }
    double avg = r.f64();
    std::vector<std::size_t> offsets(term_count + 1);
    for (auto& off : offsets) {
        off = r.u64();
    }
    std::vector<Posting> postings(offsets.back());
    for (auto& p : postings) {
        p.doc = r.u32();
        p.tf = r.u32();
    }
    return Bm25Index::from_parts(params, std::move(ids), std::move(terms), std::move(doc_len), avg,
                                 std::move(offsets), std::move(postings));
}

void save_tfidf(std::ostream& out, const TfidfIndex& idx)
{
    const auto& v = idx.vocab();
    binio::put_u8(out, kMethodTfidf);
    binio::put_u64(out, v.n());
    binio::put_u64(out, v.k());
    binio::put_u64(out, v.train_docs());
    binio::put_u64(out, v.size());
    for (const auto& e : v.entries()) {
        binio::put_string(out, e.gram);
        binio::put_u64(out, e.frequency);
        binio::put_u32(out, e.df);
    }
    put_ids(out, idx.doc_ids());
    for (auto off : idx.offsets()) {
        binio::put_u64(out, off);
    }
    for (const auto& e : idx.entries()) {
        binio::put_u32(out, e.doc);
        binio::put_f64(out, e.weight);
    }
}

TfidfIndex load_tfidf(binio::Reader& r, const std::string& source)
{
    auto n = r.u64();
    auto k = r.u64();
    auto train_docs = r.u64();
    auto size = r.u64();
    std::vector<VocabEntry> entries;
    entries.reserve(size);
    for (std::uint64_t i = 0; i < size; ++i) {
        VocabEntry e;
        e.gram = r.string();
        e.frequency = r.u64();
        e.df = r.u32();
        entries.push_back(std::move(e));
    }
    NGramVocab vocab(n, k, train_docs, std::move(entries));
    auto ids = get_ids(r, source);
    std::vector<std::size_t> offsets(vocab.size() + 1);
    for (auto& off : offsets) {
        off = r.u64();
    }
    std::vector<TfidfIndex::Entry> weights(offsets.back());
    for (auto& e : weights) {
        e.doc = r.u32();
        e.weight = r.f64();
    }
    return TfidfIndex::from_parts(std::move(vocab), std::move(ids), std::move(offsets), std::move(weights));
}

}  // namespace

void save_snapshot(std::ostream& out, const LexicalIndex& index)
{
    binio::put_bytes(out, kSnapshotMagic);
    std::visit(
        [&](const auto& idx) {
            using T = std::decay_t<decltype(idx)>;
            if constexpr (std::is_same_v<T, Bm25Index>) {
                save_bm25(out, idx);
            } else {
                save_tfidf(out, idx);
            }
        },
        index);
}

void save_snapshot_file(const std::string& path, const LexicalIndex& index)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path);
    }
    save_snapshot(out, index);
    if (!out) {
        throw ValidationError("write failed for " + path);
    }
}

LexicalIndex load_snapshot(std::istream& in, const std::string& source)
{
    binio::Reader r(in, source);
    if (r.bytes(kSnapshotMagic.size()) != kSnapshotMagic) {
        throw ValidationError(source + ": not a lexical index snapshot (expected magic " + std::string(kSnapshotMagic) +
                              ")");
    }
    auto method = r.u8();
    LexicalIndex out;
    switch (method) {
    case kMethodBm25: out = load_bm25(r, source); break;
    case kMethodTfidf: out = load_tfidf(r, source); break;
    default: throw ValidationError(source + ": unknown index method tag " + std::to_string(method));
    }
    if (!r.at_end()) {
        throw ValidationError(source + ": trailing bytes after snapshot");
    }
    return out;
}

LexicalIndex load_snapshot_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    return load_snapshot(in, path);
}

std::string method_name(const LexicalIndex& index)
{
    if (const auto* t = std::get_if<TfidfIndex>(&index)) {
        return "tfidf" + std::to_string(t->vocab().n());
    }
    return "bm25";
}

}  // namespace lexgap
