#include "claimrank/features.hpp"

#include <algorithm>
#include <numeric>

#include "claimrank/error.hpp"
#include "claimrank/textproc.hpp"

namespace claimrank {

std::size_t FeatureConfig::dim() const {
    std::size_t width = fc ? static_cast<std::size_t>(fc->k + fc->l + 1) : 1;
    return layout.base_dim() * width + (use_global ? 3 : 0);
}

json FeatureConfig::to_json() const {
    json j{{"top_m_sentences", layout.top_m_sentences}, {"use_global", use_global}};
    if (fc) j["fc"] = {{"k", fc->k}, {"l", fc->l}};
    else j["fc"] = nullptr;
    return j;
}

FeatureConfig FeatureConfig::from_json(const json& j) {
    FeatureConfig c;
    c.layout.top_m_sentences = j.value("top_m_sentences", std::size_t{3});
    if (c.layout.top_m_sentences == 0) throw Error("top_m_sentences must be at least 1");
    c.use_global = j.value("use_global", false);
    if (j.contains("fc") && !j.at("fc").is_null()) {
        FCConfig fc{j.at("fc").value("k", 0), j.at("fc").value("l", 0)};
        if (fc.k < 0 || fc.l < 0) throw Error("FC context sizes must be non-negative");
        c.fc = fc;
    }
    return c;
}

std::string FeatureConfig::hash() const { return json_hash(to_json()); }

SimilarityExtractor::SimilarityExtractor(const InvertedIndex& index, const EmbeddingProvider& provider,
                                         const std::vector<VerifiedClaim>& claims, FeatureLayout layout)
    : index_(index), provider_(provider), layout_(layout) {
    for (const auto& c : claims) claims_.emplace(c.id, &c);
}

const SimilarityExtractor::ClaimEmbeddings& SimilarityExtractor::claim_embeddings(const std::string& id) const {
    {
        std::lock_guard lock(cache_mutex_);
        auto it = cache_.find(id);
        if (it != cache_.end()) return *it->second;
    }
    auto c_it = claims_.find(id);
    if (c_it == claims_.end()) throw Error("unknown candidate '" + id + "'");
    const VerifiedClaim& c = *c_it->second;
    auto e = std::make_shared<ClaimEmbeddings>();
    e->ver_claim = provider_.embed(c.ver_claim);
    e->title = provider_.embed(c.title);
    for (const auto& s : split_sentences(c.body)) e->sentences.push_back(provider_.embed(s));
    std::lock_guard lock(cache_mutex_);
    return *cache_.emplace(id, std::move(e)).first->second;
}

std::vector<double> SimilarityExtractor::similarities(const std::vector<std::string>& query_tokens,
                                                      const EmbeddingVector& query_vec, const std::string& id) const {
    std::vector<double> out;
    out.reserve(layout_.num_similarities());
    auto doc = index_.doc_number(id);
    for (auto f : kAllFields) out.push_back(index_.score(f, query_tokens, doc));
    const auto& e = claim_embeddings(id);
    out.push_back(cosine(query_vec, e.ver_claim));
    out.push_back(cosine(query_vec, e.title));
    for (double s : top_sentence_sims(query_vec, e.sentences, layout_.top_m_sentences)) out.push_back(s);
    return out;
}

std::vector<double> SimilarityExtractor::similarities(const std::string& query_text,
                                                      const std::string& ver_claim_id) const {
    return similarities(tokenize(query_text, index_.tokenizer()), provider_.embed(query_text), ver_claim_id);
}

std::vector<std::vector<double>> SimilarityExtractor::similarities(const std::string& query_text,
                                                                   const std::vector<std::string>& ids) const {
    auto tokens = tokenize(query_text, index_.tokenizer());
    auto q = provider_.embed(query_text);
    std::vector<std::vector<double>> out;
    out.reserve(ids.size());
    for (const auto& id : ids) out.push_back(similarities(tokens, q, id));
    return out;
}

std::vector<double> base_similarities(const std::string& query_text, const VerifiedClaim& candidate,
                                      const InvertedIndex& index, const EmbeddingProvider& provider,
                                      const FeatureLayout& layout) {
    // The extractor keeps pointers into this vector.
    const std::vector<VerifiedClaim> claims{candidate};
    SimilarityExtractor extractor(index, provider, claims, layout);
    return extractor.similarities(query_text, candidate.id);
}

std::vector<std::vector<double>> reciprocal_ranks(const std::vector<std::string>& ids,
                                                  const std::vector<std::vector<double>>& sims) {
    if (ids.empty()) throw Error("reciprocal_ranks: empty candidate pool");
    if (ids.size() != sims.size()) throw Error("reciprocal_ranks: ids and similarity rows differ in length");
    const std::size_t channels = sims.front().size();
    for (const auto& row : sims)
        if (row.size() != channels) throw Error("reciprocal_ranks: ragged similarity rows");

    std::vector<std::vector<double>> rr(ids.size(), std::vector<double>(channels, 0.0));
    std::vector<std::size_t> order(ids.size());
    for (std::size_t c = 0; c < channels; ++c) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (sims[a][c] != sims[b][c]) return sims[a][c] > sims[b][c];
            return ids[a] < ids[b];
        });
        for (std::size_t r = 0; r < order.size(); ++r) rr[order[r]][c] = 1.0 / static_cast<double>(r + 1);
    }
    return rr;
}

std::vector<FeatureVector> base_vectors(const std::vector<std::string>& ids,
                                        const std::vector<std::vector<double>>& sims) {
    auto rr = reciprocal_ranks(ids, sims);
    std::vector<FeatureVector> out(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out[i] = sims[i];
        out[i].insert(out[i].end(), rr[i].begin(), rr[i].end());
    }
    return out;
}

json ScalerParams::to_json() const { return json{{"min", min}, {"max", max}}; }

ScalerParams ScalerParams::from_json(const json& j) {
    ScalerParams p;
    p.min = j.at("min").get<std::vector<double>>();
    p.max = j.at("max").get<std::vector<double>>();
    if (p.min.size() != p.max.size()) throw Error("scaler min/max lengths differ");
    return p;
}

ScalerParams fit_scaler(const std::vector<FeatureVector>& train_vectors) {
    if (train_vectors.empty()) throw Error("fit_scaler: empty training set");
    ScalerParams p;
    p.min = train_vectors.front();
    p.max = train_vectors.front();
    for (const auto& v : train_vectors) {
        if (v.size() != p.min.size()) throw Error("fit_scaler: vectors differ in dimension");
        for (std::size_t d = 0; d < v.size(); ++d) {
            p.min[d] = std::min(p.min[d], v[d]);
            p.max[d] = std::max(p.max[d], v[d]);
        }
    }
    return p;
}

FeatureVector apply_scaler(const ScalerParams& params, const FeatureVector& v) {
    if (v.size() != params.dim())
        throw Error("apply_scaler: vector has dimension " + std::to_string(v.size()) + ", scaler expects " +
                    std::to_string(params.dim()));
    FeatureVector out(v.size());
    for (std::size_t d = 0; d < v.size(); ++d) {
        const double lo = params.min[d];
        const double hi = params.max[d];
        out[d] = hi > lo ? std::clamp(-1.0 + 2.0 * (v[d] - lo) / (hi - lo), -1.0, 1.0) : 0.0;
    }
    return out;
}

ContextWindow context_window(std::size_t num_sentences, std::size_t first_pos, std::size_t last_pos,
                             const FCConfig& fc) {
    if (fc.k < 0 || fc.l < 0) throw Error("FC context sizes must be non-negative");
    ContextWindow w;
    for (int d = fc.k; d >= 1; --d) {
        auto offset = static_cast<std::size_t>(d);
        w.before.push_back(first_pos >= offset ? std::optional<std::size_t>(first_pos - offset) : std::nullopt);
    }
    for (int d = 1; d <= fc.l; ++d) {
        std::size_t pos = last_pos + static_cast<std::size_t>(d);
        w.after.push_back(pos < num_sentences ? std::optional<std::size_t>(pos) : std::nullopt);
    }
    return w;
}

FeatureVector fc_concat(const std::vector<std::optional<FeatureVector>>& before, const FeatureVector& center,
                        const std::vector<std::optional<FeatureVector>>& after) {
    const std::size_t width = center.size();
    FeatureVector out;
    out.reserve(width * (before.size() + after.size() + 1));
    auto append = [&](const std::optional<FeatureVector>& v) {
        if (!v) {
            out.insert(out.end(), width, 0.0);
            return;
        }
        if (v->size() != width) throw Error("fc_concat: neighbor vector dimension differs from center");
        out.insert(out.end(), v->begin(), v->end());
    };
    for (const auto& v : before) append(v);
    out.insert(out.end(), center.begin(), center.end());
    for (const auto& v : after) append(v);
    return out;
}

FeatureVector assemble(const FeatureVector& context_vector, const GlobalScores& global, const FeatureConfig& config) {
    const std::size_t expected = config.dim() - (config.use_global ? 3 : 0);
    if (context_vector.size() != expected)
        throw Error("assemble: context vector has dimension " + std::to_string(context_vector.size()) +
                    ", configuration expects " + std::to_string(expected));
    FeatureVector out = context_vector;
    if (config.use_global) {
        out.push_back(global.p_support);
        out.push_back(global.p_refute);
        out.push_back(global.p_nei);
    }
    return out;
}

}  // namespace claimrank
