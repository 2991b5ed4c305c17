#include <doctest.h>

#include "claimrank/error.hpp"
#include "claimrank/textproc.hpp"
#include "support/synthetic.hpp"

using namespace claimrank;
using V = std::vector<std::string>;

TEST_CASE("tokenize default config") {
    CHECK(tokenize("Hillary Clinton wanted the wall.") == V{"hillary", "clinton", "wanted", "the", "wall"});
    CHECK(tokenize("").empty());
    // U+2014 is neither a letter nor a digit, so it separates the words
    CHECK(tokenize("TPP\xE2\x80\x94the gold standard!") == V{"tpp", "the", "gold", "standard"});
    CHECK(tokenize("Caf\xC3\xA9 2019") == V{"caf\xC3\xA9", "2019"});
    CHECK(tokenize("\xC3\x89LAN") == V{"\xC3\xA9lan"});
}

TEST_CASE("tokenize options") {
    TokenizerConfig cfg;
    cfg.strip_punctuation = false;
    cfg.lowercase = false;
    CHECK(tokenize("Hi, you!", cfg) == V{"Hi", ",", "you", "!"});

    TokenizerConfig stop;
    stop.stopwords = {"the"};
    stop.stemmer = Stemmer::porter;
    CHECK(tokenize("The ponies and the caresses", stop) == V{"poni", "and", "caress"});
}

TEST_CASE("tokenizer config json and hash") {
    TokenizerConfig a;
    a.stopwords = {"a", "b"};
    auto b = TokenizerConfig::from_json(a.to_json());
    CHECK(b.hash() == a.hash());
    b.stemmer = Stemmer::porter;
    CHECK(b.hash() != a.hash());
}

TEST_CASE("sentence splitting") {
    CHECK(split_sentences("A. B? C!") == V{"A.", "B?", "C!"});
    CHECK(split_sentences("").empty());
    CHECK(split_sentences("Mr. Trump said X.") == V{"Mr. Trump said X."});
    CHECK(split_sentences("We met Dr. Smith. He left!!  Then \"why?\" she asked") ==
          V{"We met Dr. Smith.", "He left!!", "Then \"why?\"", "she asked"});
    CHECK(split_sentences("Pi is 3.14 today.") == V{"Pi is 3.14 today."});
    CHECK(split_sentences("   ").empty());
}

TEST_CASE("shipped abbreviation file matches the built-in list") {
    auto path = std::string(CLAIMRANK_RESOURCE_DIR) + "/abbreviations.txt";
    auto shipped = load_word_list(path);
    CHECK(shipped == default_abbreviations());
    CHECK(shipped.count("mr") == 1);
    auto spans = sentence_spans("Mr. Trump said X.", shipped);
    CHECK(spans.size() == 1);
}

TEST_CASE("load_word_list errors on a missing file") {
    CHECK_THROWS_AS(load_word_list("/nonexistent/words.txt"), Error);
}

TEST_CASE("porter stemmer reference pairs") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"caresses", "caress"}, {"ponies", "poni"},       {"ties", "ti"},          {"caress", "caress"},
        {"cats", "cat"},        {"feed", "feed"},         {"agreed", "agre"},      {"plastered", "plaster"},
        {"motoring", "motor"},  {"sing", "sing"},         {"conflated", "conflat"}, {"troubled", "troubl"},
        {"sized", "size"},      {"hopping", "hop"},       {"falling", "fall"},     {"filing", "file"},
        {"happy", "happi"},     {"sky", "sky"},           {"relational", "relat"}, {"conditional", "condit"},
        {"rational", "ration"}, {"digitizer", "digit"},   {"generalization", "gener"},
        {"oscillators", "oscil"}, {"hopeful", "hope"},    {"goodness", "good"},    {"triplicate", "triplic"},
        {"electrical", "electr"}, {"revival", "reviv"},   {"adjustable", "adjust"}, {"probate", "probat"},
        {"rate", "rate"},       {"controlling", "control"}, {"roll", "roll"},      {"is", "is"},
    };
    for (const auto& [in, out] : cases) {
        INFO(in);
        CHECK(porter_stem(in) == out);
    }
    CHECK(porter_stem("2019") == "2019");
}
