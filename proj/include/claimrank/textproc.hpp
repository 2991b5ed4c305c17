#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "claimrank/io.hpp"

namespace claimrank {

enum class Stemmer { none, porter };

struct TokenizerConfig {
    bool lowercase = true;
    bool strip_punctuation = true;
    std::set<std::string> stopwords;  // empty: no stopword removal
    Stemmer stemmer = Stemmer::none;

    json to_json() const;
    static TokenizerConfig from_json(const json& j);
    // Stored in index and model files so artifacts built under different
    // tokenization are never scored together.
    std::string hash() const;
};

// Maximal runs of Unicode letters/digits. With strip_punctuation off, each
// other non-space code point is emitted as its own token.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

struct SentenceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;  // exclusive
};

// Splits on runs of . ! ? followed by whitespace or end of text; a single
// period after a known abbreviation does not end a sentence. Spans are
// trimmed and cover all non-whitespace input.
std::vector<SentenceSpan> sentence_spans(std::string_view text);
std::vector<SentenceSpan> sentence_spans(std::string_view text, const std::set<std::string>& abbreviations);
std::vector<std::string> split_sentences(std::string_view text);

// Lowercase, period-free entries, e.g. "mr", "e.g".
const std::set<std::string>& default_abbreviations();

// One entry per line; blank lines and lines starting with '#' are skipped.
std::set<std::string> load_word_list(const std::string& path);

std::string porter_stem(std::string_view word);

}  // namespace claimrank
