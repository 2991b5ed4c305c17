#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "claimrank/io.hpp"

namespace claimrank {

using EmbeddingVector = std::vector<double>;

enum class ProviderKind { hashed_fallback, file };

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual EmbeddingVector embed(std::string_view text) const = 0;
    virtual std::size_t dim() const = 0;
    virtual ProviderKind kind() const = 0;
    virtual std::string provenance() const = 0;
};

// Signed feature hashing of unigrams and bigrams, L2-normalized. Needs no
// external model; empty text maps to the zero vector.
class HashedEmbedder final : public EmbeddingProvider {
public:
    explicit HashedEmbedder(std::size_t dim = 256);
    EmbeddingVector embed(std::string_view text) const override;
    std::size_t dim() const override { return dim_; }
    ProviderKind kind() const override { return ProviderKind::hashed_fallback; }
    std::string provenance() const override;

private:
    std::size_t dim_;
};

// Exact-text lookup into vectors precomputed by an external encoder.
// File layout: a header line {"dim", "provenance"} followed by
// {"text", "vector"} lines.
class FileEmbedder final : public EmbeddingProvider {
public:
    static FileEmbedder load(const std::string& path);
    FileEmbedder(std::size_t dim, std::string provenance, std::unordered_map<std::string, EmbeddingVector> table);

    EmbeddingVector embed(std::string_view text) const override;
    std::size_t dim() const override { return dim_; }
    ProviderKind kind() const override { return ProviderKind::file; }
    std::string provenance() const override { return provenance_; }
    bool contains(std::string_view text) const { return table_.count(std::string(text)) > 0; }
    std::size_t size() const { return table_.size(); }

private:
    std::size_t dim_;
    std::string provenance_;
    std::unordered_map<std::string, EmbeddingVector> table_;
};

void write_embedding_file(const std::string& path, const EmbeddingProvider& provider,
                          const std::vector<std::string>& texts);

std::unique_ptr<EmbeddingProvider> make_provider(const json& config);

// a.b / (|a| |b|), 0 when either norm is 0.
double cosine(std::span<const double> a, std::span<const double> b);

// The m largest cosines between the query and each sentence, descending,
// padded with 0.0 when there are fewer than m sentences.
std::vector<double> top_sentence_sims(const EmbeddingProvider& provider, std::string_view query_text,
                                      const std::vector<std::string>& sentences, std::size_t m);
std::vector<double> top_sentence_sims(std::span<const double> query,
                                      const std::vector<EmbeddingVector>& sentences, std::size_t m);

}  // namespace claimrank
