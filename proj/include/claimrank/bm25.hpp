#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "claimrank/corpus.hpp"
#include "claimrank/textproc.hpp"

namespace claimrank {

struct BM25Params {
    double k1 = 1.2;
    double b = 0.75;
};

enum class Field { ver_claim = 0, title = 1, body = 2, combined = 3 };
inline constexpr std::array<Field, 4> kAllFields = {Field::ver_claim, Field::title, Field::body, Field::combined};
std::string to_string(Field f);
Field parse_field(const std::string& name);

struct Posting {
    std::uint32_t doc = 0;
    std::uint32_t tf = 0;
    bool operator==(const Posting&) const = default;
};

struct ScoredDoc {
    std::string id;
    double score = 0.0;
};

// Inverted index over the four text fields of a verified-claim corpus.
// Internal document numbers follow ascending claim id, so "ascending doc
// number" and "ascending ver_claim_id" are the same tie-break.
class InvertedIndex {
public:
    struct FieldIndex {
        std::unordered_map<std::string, std::vector<Posting>> postings;  // sorted by doc
        std::vector<std::uint32_t> lengths;
        double avg_length = 0.0;
    };

    InvertedIndex() = default;

    static InvertedIndex build(const std::vector<VerifiedClaim>& claims, const TokenizerConfig& tokenizer,
                               const BM25Params& params = {});

    std::size_t num_docs() const { return doc_ids_.size(); }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    const BM25Params& params() const { return params_; }
    const TokenizerConfig& tokenizer() const { return tokenizer_; }
    const FieldIndex& field(Field f) const { return fields_[static_cast<std::size_t>(f)]; }

    // Internal number of a claim id; throws Error for unknown ids.
    std::uint32_t doc_number(const std::string& id) const;

    std::size_t document_frequency(Field f, const std::string& term) const;
    std::uint32_t term_frequency(Field f, const std::string& term, std::uint32_t doc) const;
    double idf(Field f, const std::string& term) const;

    // Okapi BM25 with the non-negative IDF ln((N - df + 0.5) / (df + 0.5) + 1),
    // summed over query tokens in the order given.
    double score(Field f, const std::vector<std::string>& query_tokens, std::uint32_t doc) const;
    double score(Field f, const std::vector<std::string>& query_tokens, const std::string& doc_id) const;

    // Documents with positive score, descending; ties by ascending id.
    std::vector<ScoredDoc> retrieve(std::string_view query_text, std::size_t k = 100,
                                    Field f = Field::combined) const;

    void save(const std::string& path) const;
    static InvertedIndex load(const std::string& path);
    std::string serialize() const;
    static InvertedIndex deserialize(std::string_view bytes);

private:
    BM25Params params_;
    TokenizerConfig tokenizer_;
    std::vector<std::string> doc_ids_;
    std::unordered_map<std::string, std::uint32_t> doc_numbers_;
    std::array<FieldIndex, 4> fields_;

    void finalize_stats();
};

// Text of a claim field as indexed; combined = ver_claim + " " + title + " " + body.
std::string field_text(const VerifiedClaim& claim, Field f);

}  // namespace claimrank
