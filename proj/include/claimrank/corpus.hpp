#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "claimrank/io.hpp"

namespace claimrank {

struct VerifiedClaim {
    std::string id;
    std::string ver_claim;
    std::string title;
    std::string body;
    std::optional<std::string> url;
    std::optional<std::string> date;
};

struct TranscriptSentence {
    std::string debate_id;
    std::int64_t line_no = 0;
    std::string speaker;
    std::string text;
    std::optional<std::string> resolved_text;
};

struct Transcript {
    std::string debate_id;
    std::optional<std::string> event_date;  // YYYY-MM-DD
    std::vector<TranscriptSentence> sentences;

    // Position of a line within `sentences`, or nullopt.
    std::optional<std::size_t> position_of(std::int64_t line_no) const;
};

enum class Category { clean, clean_hard, part_of, context_dep, unlabeled };

inline constexpr std::array<Category, 4> kLabeledCategories = {
    Category::clean, Category::clean_hard, Category::part_of, Category::context_dep};

std::string to_string(Category c);
std::optional<Category> parse_category(const std::string& name);

struct ClaimPair {
    std::string debate_id;
    std::vector<std::int64_t> line_nos;
    std::vector<std::string> ver_claim_ids;
    Category category = Category::unlabeled;

    // Stable query identifier: "<debate_id>:<line>[+<line>...]".
    std::string query_id() const;
};

// Validated, immutable corpus. Transcripts are kept sorted by debate_id.
class DatasetBundle {
public:
    DatasetBundle() = default;
    DatasetBundle(std::vector<VerifiedClaim> claims, std::vector<Transcript> transcripts,
                  std::vector<ClaimPair> pairs);

    const std::vector<VerifiedClaim>& claims() const { return claims_; }
    const std::vector<Transcript>& transcripts() const { return transcripts_; }
    const std::vector<ClaimPair>& pairs() const { return pairs_; }

    const VerifiedClaim* find_claim(const std::string& id) const;
    const Transcript* find_transcript(const std::string& debate_id) const;

    // Query text of a pair: its sentences space-joined in line order.
    std::string query_text(const ClaimPair& pair) const;

    std::map<Category, std::size_t> category_counts() const;

private:
    std::vector<VerifiedClaim> claims_;
    std::vector<Transcript> transcripts_;
    std::vector<ClaimPair> pairs_;
    std::unordered_map<std::string, std::size_t> claim_index_;
    std::unordered_map<std::string, std::size_t> transcript_index_;
};

DatasetBundle load_corpus(const std::string& claims_path, const std::string& transcripts_path,
                          const std::string& pairs_path);

enum class SplitKind { chrono, semi_chrono, debate_random, sentence_random };

std::string to_string(SplitKind k);
SplitKind parse_split_kind(const std::string& name);

struct SplitSpec {
    SplitKind kind = SplitKind::chrono;
    double train_ratio = 0.8;
    std::uint64_t seed = 0;
    int chrono_train_debates = 50;
    int chrono_test_debates = 20;
};

struct SplitResult {
    SplitKind kind = SplitKind::chrono;
    std::uint64_t seed = 0;
    std::vector<std::size_t> train;  // indices into bundle.pairs(), ascending
    std::vector<std::size_t> test;
    // Chrono only: pairs of debates between the training head and the test
    // tail when the corpus has more debates than the two counts.
    std::vector<std::size_t> excluded;
};

SplitResult split(const DatasetBundle& bundle, const SplitSpec& spec);

json split_to_json(const SplitResult& s);
SplitResult split_from_json(const json& j);

}  // namespace claimrank
