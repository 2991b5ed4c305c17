#pragma once

// Deterministic synthetic corpora for pipeline tests.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "claimrank/context.hpp"
#include "claimrank/corpus.hpp"
#include "claimrank/io.hpp"

namespace synth {

struct Suite {
    std::vector<claimrank::VerifiedClaim> claims;
    std::vector<claimrank::Transcript> transcripts;
    std::vector<claimrank::ClaimPair> pairs;
    std::optional<claimrank::CorefResolutionSet> source_coref;
    std::optional<claimrank::CorefResolutionSet> target_coref;
    std::optional<claimrank::GlobalScoreSet> global_scores;

    claimrank::DatasetBundle bundle() const;
};

struct SuitePaths {
    std::string dir;
    std::string config;  // config.json with sensible defaults for the suite
};

// Writes the JSONL inputs, any provider files and config.json into dir.
// `config_overrides` is merged on top of the default config document.
SuitePaths write_suite(const Suite& suite, const std::string& dir,
                       const claimrank::json& config_overrides = claimrank::json::object());

// Pseudo-words: lowercase consonant-vowel syllables, unique per call sequence.
class WordSource {
public:
    explicit WordSource(std::uint64_t seed) : rng_(seed) {}
    std::string fresh();

private:
    claimrank::Rng rng_;
    std::unordered_set<std::string> issued_;
};

// 200 claims, 40 queries, gold identifiable by rare tokens shared with the query.
Suite baseline_suite(std::uint64_t seed, std::size_t n_claims = 200, std::size_t n_queries = 40);

// Queries carry only cluster-level topic words; the gold claim's rare tokens
// sit in the sentences immediately before and after the query.
Suite context_suite(std::uint64_t seed);

// Queries replace the gold's entity names with pronouns; a source coref
// file restores them.
Suite coref_suite(std::uint64_t seed);

// Random debates with dates spread over several years and 0..4 pairs each.
Suite random_debates(std::uint64_t seed, std::size_t n_debates);

// Baseline suite plus source/target coref files and global score triples,
// so every ablation row has inputs.
Suite matrix_suite(std::uint64_t seed);

std::string temp_dir(const std::string& name);

}  // namespace synth
