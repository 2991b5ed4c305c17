#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "claimrank/corpus.hpp"
#include "claimrank/embed.hpp"

namespace claimrank {

enum class CorefSide { source, target };

std::string to_string(CorefSide s);

// Precomputed co-reference resolutions. Source keys are (debate_id,
// line_no); target keys are (ver_claim_id, "ver_claim" | "body").
class CorefResolutionSet {
public:
    using Key = std::pair<std::string, std::string>;

    explicit CorefResolutionSet(CorefSide side = CorefSide::source) : side_(side) {}

    // coref.jsonl lines: {side, doc_id, unit, resolved_text}. Every line must
    // carry the expected side.
    static CorefResolutionSet load(const std::string& path, CorefSide side);

    void add(const std::string& doc_id, const std::string& unit, std::string resolved_text);

    CorefSide side() const { return side_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::map<Key, std::string>& entries() const { return entries_; }

    // Stored resolution, or raw_text when the key has none.
    const std::string& resolve(const std::string& doc_id, const std::string& unit, const std::string& raw_text) const;
    const std::string& resolve_line(const std::string& debate_id, std::int64_t line_no, const std::string& raw) const {
        return resolve(debate_id, std::to_string(line_no), raw);
    }

    void save(const std::string& path) const;

private:
    CorefSide side_;
    std::map<Key, std::string> entries_;
};

// Transcript copy whose sentence texts are replaced by source resolutions.
Transcript resolve_transcript(const Transcript& t, const CorefResolutionSet& coref);
// Claim copy whose ver_claim and body are replaced by target resolutions.
VerifiedClaim resolve_claim(const VerifiedClaim& c, const CorefResolutionSet& coref);

struct GlobalScores {
    double p_support = 0.0;
    double p_refute = 0.0;
    double p_nei = 0.0;
    bool present = false;
};

// Support / refute / not-enough-info probabilities per (query, candidate).
class GlobalScoreSet {
public:
    static constexpr double kSumTolerance = 1e-6;

    static GlobalScoreSet load(const std::string& path);
    void add(const std::string& query_id, const std::string& ver_claim_id, double p_support, double p_refute,
             double p_nei);

    // Stored triple, or zeros with present = false.
    GlobalScores lookup(const std::string& query_id, const std::string& ver_claim_id) const;

    std::size_t size() const { return entries_.size(); }
    void save(const std::string& path) const;

private:
    std::map<std::pair<std::string, std::string>, GlobalScores> entries_;
};

// Evidence graph for one (query, candidate): claim, title and the three
// body sentences closest to the query, in that order; empty nodes dropped.
struct XhNode {
    std::string kind;  // "claim" | "title" | "sentence"
    std::string text;
    bool operator==(const XhNode&) const = default;
};

struct XhGraph {
    std::string query_id;
    std::string query_text;
    std::string ver_claim_id;
    std::vector<XhNode> nodes;
    bool operator==(const XhGraph&) const = default;
};

inline constexpr std::size_t kXhSentenceNodes = 3;

XhGraph build_xh_graph(const std::string& query_id, const std::string& query_text, const VerifiedClaim& claim,
                       const EmbeddingProvider& provider);

void write_xh_graphs(const std::string& path, const std::vector<XhGraph>& graphs);
std::vector<XhGraph> read_xh_graphs(const std::string& path);

}  // namespace claimrank
