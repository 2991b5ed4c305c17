#include "claimrank/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>
#include <unordered_set>

#include "claimrank/error.hpp"

namespace claimrank {

namespace {

constexpr char kMagic[8] = {'C', 'L', 'M', 'B', 'M', '2', '5', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer {
public:
    void bytes(std::string_view s) { out_.append(s); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void str(std::string_view s) {
        u32(static_cast<std::uint32_t>(s.size()));
        bytes(s);
    }
    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::string_view data) : data_(data) {}
    std::string_view bytes(std::size_t n) {
        if (pos_ + n > data_.size()) throw Error("index file truncated");
        auto s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::uint32_t u32() {
        auto s = bytes(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[static_cast<std::size_t>(i)]);
        return v;
    }
    std::uint64_t u64() {
        auto s = bytes(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[static_cast<std::size_t>(i)]);
        return v;
    }
    std::string str() {
        auto n = u32();
        return std::string(bytes(n));
    }
    bool done() const { return pos_ == data_.size(); }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(Field f) {
    switch (f) {
        case Field::ver_claim: return "ver_claim";
        case Field::title: return "title";
        case Field::body: return "body";
        case Field::combined: return "combined";
    }
    return "combined";
}

Field parse_field(const std::string& name) {
    for (auto f : kAllFields)
        if (to_string(f) == name) return f;
    throw Error("unknown index field '" + name + "'");
}

std::string field_text(const VerifiedClaim& claim, Field f) {
    switch (f) {
        case Field::ver_claim: return claim.ver_claim;
        case Field::title: return claim.title;
        case Field::body: return claim.body;
        case Field::combined: return claim.ver_claim + " " + claim.title + " " + claim.body;
    }
    return {};
}

InvertedIndex InvertedIndex::build(const std::vector<VerifiedClaim>& claims, const TokenizerConfig& tokenizer,
                                   const BM25Params& params) {
    if (!(params.k1 > 0.0) || !(params.b >= 0.0 && params.b <= 1.0))
        throw Error("BM25 parameters out of range (k1 > 0, 0 <= b <= 1)");
    InvertedIndex index;
    index.params_ = params;
    index.tokenizer_ = tokenizer;

    std::vector<const VerifiedClaim*> ordered;
    ordered.reserve(claims.size());
    for (const auto& c : claims) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(),
              [](const VerifiedClaim* a, const VerifiedClaim* b) { return a->id < b->id; });
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const auto& id = ordered[i]->id;
        if (!index.doc_numbers_.emplace(id, static_cast<std::uint32_t>(i)).second)
            throw Error("duplicate verified claim id '" + id + "'");
        index.doc_ids_.push_back(id);
    }

    for (auto f : kAllFields) {
        auto& fi = index.fields_[static_cast<std::size_t>(f)];
        fi.lengths.resize(ordered.size());
        for (std::size_t d = 0; d < ordered.size(); ++d) {
            auto tokens = tokenize(field_text(*ordered[d], f), tokenizer);
            fi.lengths[d] = static_cast<std::uint32_t>(tokens.size());
            std::map<std::string, std::uint32_t> counts;
            for (auto& t : tokens) ++counts[t];
            for (auto& [term, tf] : counts) fi.postings[term].push_back({static_cast<std::uint32_t>(d), tf});
        }
    }
    index.finalize_stats();
    return index;
}

void InvertedIndex::finalize_stats() {
    for (auto& fi : fields_) {
        double total = 0.0;
        for (auto len : fi.lengths) total += len;
        fi.avg_length = fi.lengths.empty() ? 0.0 : total / static_cast<double>(fi.lengths.size());
    }
}

std::uint32_t InvertedIndex::doc_number(const std::string& id) const {
    auto it = doc_numbers_.find(id);
    if (it == doc_numbers_.end()) throw Error("document '" + id + "' is not in the index");
    return it->second;
}

std::size_t InvertedIndex::document_frequency(Field f, const std::string& term) const {
    const auto& postings = field(f).postings;
    auto it = postings.find(term);
    return it == postings.end() ? 0 : it->second.size();
}

std::uint32_t InvertedIndex::term_frequency(Field f, const std::string& term, std::uint32_t doc) const {
    const auto& postings = field(f).postings;
    auto it = postings.find(term);
    if (it == postings.end()) return 0;
    auto p = std::lower_bound(it->second.begin(), it->second.end(), doc,
                              [](const Posting& x, std::uint32_t d) { return x.doc < d; });
    return (p != it->second.end() && p->doc == doc) ? p->tf : 0;
}

double InvertedIndex::idf(Field f, const std::string& term) const {
    const double n = static_cast<double>(num_docs());
    const double df = static_cast<double>(document_frequency(f, term));
    return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

double InvertedIndex::score(Field f, const std::vector<std::string>& query_tokens, std::uint32_t doc) const {
    if (doc >= num_docs()) throw Error("document number " + std::to_string(doc) + " out of range");
    const auto& fi = field(f);
    const double len = fi.lengths[doc];
    const double norm = fi.avg_length > 0.0 ? len / fi.avg_length : 0.0;
    const double k1 = params_.k1;
    const double b = params_.b;
    double total = 0.0;
    for (const auto& term : query_tokens) {
        const double tf = term_frequency(f, term, doc);
        if (tf == 0.0) continue;
        total += idf(f, term) * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * norm));
    }
    return total;
}

double InvertedIndex::score(Field f, const std::vector<std::string>& query_tokens, const std::string& doc_id) const {
    return score(f, query_tokens, doc_number(doc_id));
}

std::vector<ScoredDoc> InvertedIndex::retrieve(std::string_view query_text, std::size_t k, Field f) const {
    if (k == 0) throw Error("retrieve: k must be at least 1");
    auto tokens = tokenize(query_text, tokenizer_);
    const auto& postings = field(f).postings;
    std::vector<std::uint32_t> docs;
    for (const auto& t : tokens) {
        auto it = postings.find(t);
        if (it == postings.end()) continue;
        for (const auto& p : it->second) docs.push_back(p.doc);
    }
    std::sort(docs.begin(), docs.end());
    docs.erase(std::unique(docs.begin(), docs.end()), docs.end());

    std::vector<std::pair<double, std::uint32_t>> scored;
    scored.reserve(docs.size());
    for (auto d : docs) {
        double s = score(f, tokens, d);
        if (s > 0.0) scored.emplace_back(s, d);
    }
    auto cmp = [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; };
    if (scored.size() > k) {
        std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end(), cmp);
        scored.resize(k);
    } else {
        std::sort(scored.begin(), scored.end(), cmp);
    }
    std::vector<ScoredDoc> out;
    out.reserve(scored.size());
    for (auto& [s, d] : scored) out.push_back({doc_ids_[d], s});
    return out;
}

std::string InvertedIndex::serialize() const {
    json header;
    header["format"] = "claimrank-bm25";
    header["version"] = kFormatVersion;
    header["params"] = {{"k1", params_.k1}, {"b", params_.b}};
    header["idf"] = "ln((N-df+0.5)/(df+0.5)+1)";
    header["tokenizer"] = tokenizer_.to_json();
    header["tokenizer_hash"] = tokenizer_.hash();
    header["num_docs"] = num_docs();
    for (auto f : kAllFields) {
        const auto& fi = field(f);
        header["fields"][to_string(f)] = {{"avg_length", fi.avg_length}, {"num_terms", fi.postings.size()}};
    }

    Writer w;
    w.bytes(std::string_view(kMagic, sizeof(kMagic)));
    w.u32(kFormatVersion);
    auto header_text = header.dump();
    w.u64(header_text.size());
    w.bytes(header_text);
    w.u64(doc_ids_.size());
    for (const auto& id : doc_ids_) w.str(id);
    for (auto f : kAllFields) {
        const auto& fi = field(f);
        for (auto len : fi.lengths) w.u32(len);
        std::vector<const std::string*> terms;
        terms.reserve(fi.postings.size());
        for (const auto& [term, _] : fi.postings) terms.push_back(&term);
        std::sort(terms.begin(), terms.end(), [](const auto* a, const auto* b) { return *a < *b; });
        w.u64(terms.size());
        for (const auto* term : terms) {
            w.str(*term);
            const auto& list = fi.postings.at(*term);
            w.u32(static_cast<std::uint32_t>(list.size()));
            for (const auto& p : list) {
                w.u32(p.doc);
                w.u32(p.tf);
            }
        }
    }
    return w.take();
}

InvertedIndex InvertedIndex::deserialize(std::string_view bytes) {
    Reader r(bytes);
    if (r.bytes(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) throw Error("not a claimrank index file");
    if (auto v = r.u32(); v != kFormatVersion) throw Error("unsupported index version " + std::to_string(v));
    auto header_len = r.u64();
    json header;
    try {
        header = json::parse(r.bytes(header_len));
    } catch (const json::exception& e) {
        throw Error(std::string("corrupt index header: ") + e.what());
    }

    InvertedIndex index;
    index.params_.k1 = header.at("params").at("k1").get<double>();
    index.params_.b = header.at("params").at("b").get<double>();
    index.tokenizer_ = TokenizerConfig::from_json(header.at("tokenizer"));
    if (index.tokenizer_.hash() != header.at("tokenizer_hash").get<std::string>())
        throw Error("index tokenizer hash does not match its tokenizer configuration");

    auto n = r.u64();
    for (std::uint64_t i = 0; i < n; ++i) {
        auto id = r.str();
        index.doc_numbers_.emplace(id, static_cast<std::uint32_t>(i));
        index.doc_ids_.push_back(std::move(id));
    }
    for (auto f : kAllFields) {
        auto& fi = index.fields_[static_cast<std::size_t>(f)];
        fi.lengths.resize(n);
        for (auto& len : fi.lengths) len = r.u32();
        auto terms = r.u64();
        fi.postings.reserve(terms);
        for (std::uint64_t t = 0; t < terms; ++t) {
            auto term = r.str();
            auto count = r.u32();
            std::vector<Posting> list(count);
            for (auto& p : list) {
                p.doc = r.u32();
                p.tf = r.u32();
                if (p.doc >= n) throw Error("index posting refers to unknown document");
            }
            fi.postings.emplace(std::move(term), std::move(list));
        }
    }
    if (!r.done()) throw Error("trailing bytes in index file");
    index.finalize_stats();
    for (auto f : kAllFields) {
        if (index.field(f).avg_length != header.at("fields").at(to_string(f)).at("avg_length").get<double>())
            throw Error("index field statistics do not match header");
    }
    return index;
}

void InvertedIndex::save(const std::string& path) const { write_file(path, serialize()); }

InvertedIndex InvertedIndex::load(const std::string& path) { return deserialize(read_file(path)); }

}  // namespace claimrank
