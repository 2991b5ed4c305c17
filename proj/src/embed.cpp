#include "claimrank/embed.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "claimrank/error.hpp"
#include "claimrank/textproc.hpp"

namespace claimrank {

HashedEmbedder::HashedEmbedder(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) throw Error("embedding dimension must be positive");
}

std::string HashedEmbedder::provenance() const { return "hashed-unigram-bigram-fnv1a64-d" + std::to_string(dim_); }

EmbeddingVector HashedEmbedder::embed(std::string_view text) const {
    EmbeddingVector v(dim_, 0.0);
    auto tokens = tokenize(text);
    auto add = [&](const std::string& feature) {
        auto h = fnv1a64(feature);
        v[h % dim_] += (h >> 63) ? -1.0 : 1.0;
    };
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        add("u:" + tokens[i]);
        if (i + 1 < tokens.size()) add("b:" + tokens[i] + " " + tokens[i + 1]);
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
    }
    return v;
}

FileEmbedder::FileEmbedder(std::size_t dim, std::string provenance,
                           std::unordered_map<std::string, EmbeddingVector> table)
    : dim_(dim), provenance_(std::move(provenance)), table_(std::move(table)) {}

FileEmbedder FileEmbedder::load(const std::string& path) {
    std::size_t dim = 0;
    std::string provenance;
    bool have_header = false;
    std::unordered_map<std::string, EmbeddingVector> table;
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        if (!have_header) {
            auto d = require_int(obj, "dim", path, line);
            if (d <= 0) throw ValidationError(path, line, "field 'dim' must be positive");
            dim = static_cast<std::size_t>(d);
            provenance = require_string(obj, "provenance", path, line);
            have_header = true;
            return;
        }
        auto text = require_string(obj, "text", path, line);
        auto it = obj.find("vector");
        if (it == obj.end() || !it->is_array()) throw ValidationError(path, line, "field 'vector' must be an array");
        if (it->size() != dim)
            throw ValidationError(path, line, "field 'vector' has " + std::to_string(it->size()) +
                                                  " values, header says " + std::to_string(dim));
        EmbeddingVector v;
        v.reserve(dim);
        for (const auto& x : *it) {
            if (!x.is_number()) throw ValidationError(path, line, "field 'vector' must hold numbers");
            double d = x.get<double>();
            if (!std::isfinite(d)) throw ValidationError(path, line, "field 'vector' holds a non-finite value");
            v.push_back(d);
        }
        if (!table.emplace(text, std::move(v)).second)
            throw ValidationError(path, line, "duplicate text key");
    });
    if (!have_header) throw ValidationError(path, 1, "missing header line {dim, provenance}");
    return FileEmbedder(dim, std::move(provenance), std::move(table));
}

EmbeddingVector FileEmbedder::embed(std::string_view text) const {
    auto it = table_.find(std::string(text));
    if (it == table_.end()) throw Error("embedding file has no vector for text \"" + std::string(text) + "\"");
    return it->second;
}

void write_embedding_file(const std::string& path, const EmbeddingProvider& provider,
                          const std::vector<std::string>& texts) {
    std::string out = json{{"dim", provider.dim()}, {"provenance", provider.provenance()}}.dump() + "\n";
    std::vector<std::string> unique = texts;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto& t : unique) out += json{{"text", t}, {"vector", provider.embed(t)}}.dump() + "\n";
    write_file(path, out);
}

std::unique_ptr<EmbeddingProvider> make_provider(const json& config) {
    auto kind = config.value("kind", std::string("hashed"));
    if (kind == "hashed" || kind == "hashed_fallback")
        return std::make_unique<HashedEmbedder>(config.value("dim", std::size_t{256}));
    if (kind == "file") {
        if (!config.contains("path")) throw Error("file embedding provider needs 'path'");
        return std::make_unique<FileEmbedder>(FileEmbedder::load(config.at("path").get<std::string>()));
    }
    throw Error("unknown embedding provider kind '" + kind + "'");
}

double cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw Error("cosine: dimension mismatch (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::vector<double> top_sentence_sims(std::span<const double> query, const std::vector<EmbeddingVector>& sentences,
                                      std::size_t m) {
    if (m == 0) throw Error("top_sentence_sims: m must be at least 1");
    std::vector<double> sims;
    sims.reserve(sentences.size());
    for (const auto& s : sentences) sims.push_back(cosine(query, s));
    std::sort(sims.begin(), sims.end(), std::greater<>());
    sims.resize(m, 0.0);
    return sims;
}

std::vector<double> top_sentence_sims(const EmbeddingProvider& provider, std::string_view query_text,
                                      const std::vector<std::string>& sentences, std::size_t m) {
    auto q = provider.embed(query_text);
    std::vector<EmbeddingVector> embedded;
    embedded.reserve(sentences.size());
    for (const auto& s : sentences) embedded.push_back(provider.embed(s));
    return top_sentence_sims(q, embedded, m);
}

}  // namespace claimrank
