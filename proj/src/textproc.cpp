#include "claimrank/textproc.hpp"

#include <fstream>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "claimrank/error.hpp"

namespace claimrank {

namespace {

void append_utf8(std::string& out, UChar32 cp) {
    char buf[U8_MAX_LENGTH];
    int32_t len = 0;
    UBool error = false;
    U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, cp, error);
    if (!error) out.append(buf, static_cast<std::size_t>(len));
}

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

json TokenizerConfig::to_json() const {
    return json{{"lowercase", lowercase},
                {"strip_punctuation", strip_punctuation},
                {"stopwords", std::vector<std::string>(stopwords.begin(), stopwords.end())},
                {"stemmer", stemmer == Stemmer::porter ? "porter" : "none"}};
}

TokenizerConfig TokenizerConfig::from_json(const json& j) {
    TokenizerConfig c;
    c.lowercase = j.value("lowercase", true);
    c.strip_punctuation = j.value("strip_punctuation", true);
    if (j.contains("stopwords")) {
        const auto& sw = j.at("stopwords");
        if (sw.is_string()) {
            c.stopwords = load_word_list(sw.get<std::string>());
        } else {
            for (const auto& w : sw) c.stopwords.insert(w.get<std::string>());
        }
    }
    auto stem = j.value("stemmer", std::string("none"));
    if (stem == "porter") c.stemmer = Stemmer::porter;
    else if (stem != "none") throw Error("unknown stemmer '" + stem + "'");
    return c;
}

std::string TokenizerConfig::hash() const { return json_hash(to_json()); }

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        std::string tok = std::move(current);
        current.clear();
        if (config.stemmer == Stemmer::porter) tok = porter_stem(tok);
        if (!config.stopwords.empty() && config.stopwords.count(tok)) return;
        tokens.push_back(std::move(tok));
    };

    const auto* s = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 cp;
        U8_NEXT(s, i, length, cp);
        if (cp < 0) {  // ill-formed byte sequence acts as a separator
            flush();
            continue;
        }
        if (u_isalnum(cp)) {
            append_utf8(current, config.lowercase ? u_tolower(cp) : cp);
            continue;
        }
        flush();
        if (!config.strip_punctuation && !u_isUWhiteSpace(cp)) {
            append_utf8(current, cp);
            flush();
        }
    }
    flush();
    return tokens;
}

const std::set<std::string>& default_abbreviations() {
    static const std::set<std::string> list = {
        "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "gen", "gov", "sen", "rep", "rev",
        "pres", "lt", "col", "capt", "sgt", "cmdr", "adm", "hon", "vs", "etc", "e.g", "i.e",
        "u.s", "u.k", "u.n", "inc", "corp", "ltd", "co", "no", "jan", "feb", "mar", "apr",
        "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec", "approx", "dept", "est", "fig"};
    return list;
}

std::vector<SentenceSpan> sentence_spans(std::string_view text) {
    return sentence_spans(text, default_abbreviations());
}

std::vector<SentenceSpan> sentence_spans(std::string_view text, const std::set<std::string>& abbreviations) {
    std::vector<SentenceSpan> spans;
    const std::size_t n = text.size();
    auto is_term = [](char c) { return c == '.' || c == '!' || c == '?'; };
    auto is_closer = [](char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; };

    std::size_t pos = 0;
    while (pos < n && is_ascii_space(text[pos])) ++pos;
    std::size_t start = pos;
    while (pos < n) {
        if (!is_term(text[pos])) {
            ++pos;
            continue;
        }
        const std::size_t run_begin = pos;
        while (pos < n && is_term(text[pos])) ++pos;
        const std::size_t run_end = pos;
        while (pos < n && is_closer(text[pos])) ++pos;
        if (pos < n && !is_ascii_space(text[pos])) continue;

        if (run_end - run_begin == 1 && text[run_begin] == '.') {
            std::size_t w = run_begin;
            while (w > start && !is_ascii_space(text[w - 1])) --w;
            std::string word;
            for (std::size_t k = w; k < run_begin; ++k) {
                char c = text[k];
                if (word.empty() && (c == '(' || c == '"' || c == '\'' || c == '[')) continue;
                word += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
            }
            if (abbreviations.count(word)) continue;
        }
        spans.push_back({start, pos});
        while (pos < n && is_ascii_space(text[pos])) ++pos;
        start = pos;
    }
    if (start < n) {
        std::size_t end = n;
        while (end > start && is_ascii_space(text[end - 1])) --end;
        if (end > start) spans.push_back({start, end});
    }
    return spans;
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& span : sentence_spans(text)) out.emplace_back(text.substr(span.begin, span.end - span.begin));
    return out;
}

std::set<std::string> load_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open word list " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && is_ascii_space(line.back())) line.pop_back();
        std::size_t b = 0;
        while (b < line.size() && is_ascii_space(line[b])) ++b;
        line.erase(0, b);
        if (line.empty() || line[0] == '#') continue;
        words.insert(line);
    }
    return words;
}

}  // namespace claimrank
