#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "claimrank/bm25.hpp"
#include "claimrank/context.hpp"
#include "claimrank/embed.hpp"

namespace claimrank {

using FeatureVector = std::vector<double>;

// Channel layout of the base vector: 4 BM25 similarities (ver_claim, title,
// body, combined), 2 + m embedding similarities (ver_claim, title, top-m body
// sentences), then one reciprocal rank per similarity channel.
struct FeatureLayout {
    std::size_t top_m_sentences = 3;

    std::size_t num_bm25() const { return 4; }
    std::size_t num_similarities() const { return 6 + top_m_sentences; }
    std::size_t base_dim() const { return 2 * num_similarities(); }
};

struct FCConfig {
    int k = 0;  // preceding sentences
    int l = 0;  // following sentences
};

struct FeatureConfig {
    FeatureLayout layout;
    std::optional<FCConfig> fc;
    bool use_global = false;

    std::size_t dim() const;
    json to_json() const;
    static FeatureConfig from_json(const json& j);
    std::string hash() const;
};

struct PairFeatures {
    std::string query_id;
    std::string ver_claim_id;
    FeatureVector base;
    std::optional<FeatureVector> fc;
    std::optional<std::array<double, 3>> global;
    FeatureVector final;
};

// Similarity channels of (query text, candidate). Claim-side embeddings are
// cached per candidate; instances are safe to share between threads.
class SimilarityExtractor {
public:
    SimilarityExtractor(const InvertedIndex& index, const EmbeddingProvider& provider,
                        const std::vector<VerifiedClaim>& claims, FeatureLayout layout = {});

    const FeatureLayout& layout() const { return layout_; }

    std::vector<double> similarities(const std::string& query_text, const std::string& ver_claim_id) const;
    // Embeds the query once for a whole candidate pool.
    std::vector<std::vector<double>> similarities(const std::string& query_text,
                                                  const std::vector<std::string>& ver_claim_ids) const;

private:
    struct ClaimEmbeddings {
        EmbeddingVector ver_claim;
        EmbeddingVector title;
        std::vector<EmbeddingVector> sentences;
    };

    const ClaimEmbeddings& claim_embeddings(const std::string& id) const;
    std::vector<double> similarities(const std::vector<std::string>& query_tokens, const EmbeddingVector& query_vec,
                                     const std::string& id) const;

    const InvertedIndex& index_;
    const EmbeddingProvider& provider_;
    FeatureLayout layout_;
    std::unordered_map<std::string, const VerifiedClaim*> claims_;
    mutable std::mutex cache_mutex_;
    mutable std::unordered_map<std::string, std::shared_ptr<const ClaimEmbeddings>> cache_;
};

// One-off computation of the similarity channels without caching.
std::vector<double> base_similarities(const std::string& query_text, const VerifiedClaim& candidate,
                                      const InvertedIndex& index, const EmbeddingProvider& provider,
                                      const FeatureLayout& layout = {});

// Reciprocal ranks within a candidate pool, one row per candidate in input
// order. Each channel is ranked by similarity descending, ties by ascending
// ver_claim_id.
std::vector<std::vector<double>> reciprocal_ranks(const std::vector<std::string>& ver_claim_ids,
                                                  const std::vector<std::vector<double>>& sims);

// Similarities followed by reciprocal ranks, per candidate.
std::vector<FeatureVector> base_vectors(const std::vector<std::string>& ver_claim_ids,
                                        const std::vector<std::vector<double>>& sims);

struct ScalerParams {
    std::vector<double> min;
    std::vector<double> max;

    std::size_t dim() const { return min.size(); }
    json to_json() const;
    static ScalerParams from_json(const json& j);
};

ScalerParams fit_scaler(const std::vector<FeatureVector>& train_vectors);
// Maps [min, max] onto [-1, 1]; constant dimensions map to 0 and values
// outside the fitted range are clamped.
FeatureVector apply_scaler(const ScalerParams& params, const FeatureVector& v);

// Transcript positions of the k sentences before the first line and the l
// sentences after the last line; nullopt outside the transcript.
struct ContextWindow {
    std::vector<std::optional<std::size_t>> before;
    std::vector<std::optional<std::size_t>> after;
};

ContextWindow context_window(std::size_t num_sentences, std::size_t first_pos, std::size_t last_pos,
                             const FCConfig& fc);

// S(i-k) ... S(i-1), S(i), S(i+1) ... S(i+l); missing neighbors become zeros.
FeatureVector fc_concat(const std::vector<std::optional<FeatureVector>>& before, const FeatureVector& center,
                        const std::vector<std::optional<FeatureVector>>& after);

// Final vector: FC output (or base) followed by the global triple when the
// configuration enables it.
FeatureVector assemble(const FeatureVector& context_vector, const GlobalScores& global, const FeatureConfig& config);

}  // namespace claimrank
