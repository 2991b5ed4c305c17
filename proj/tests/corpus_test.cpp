#include <doctest.h>

#include <set>

#include "claimrank/corpus.hpp"
#include "claimrank/error.hpp"
#include "support/synthetic.hpp"

using namespace claimrank;

namespace {

std::string write_tmp(const std::string& dir, const std::string& name, const std::string& contents) {
    auto path = dir + "/" + name;
    write_file(path, contents);
    return path;
}

struct Files {
    std::string claims, transcripts, pairs;
};

Files small_corpus(const std::string& dir, const std::string& pairs) {
    return {write_tmp(dir, "claims.jsonl",
                      R"({"id":"c1","ver_claim":"Taxes rose.","title":"T","body":"B."})"
                      "\n"
                      R"({"id":"c2","ver_claim":"Wall paid.","title":"","body":"","url":"http://x","date":"2019-01-02"})"
                      "\n"),
            write_tmp(dir, "transcripts.jsonl",
                      R"({"debate_id":"d1","event_date":"2019-01-01","line_no":1,"speaker":"A","text":"Hello."})"
                      "\n"
                      R"({"debate_id":"d1","event_date":"2019-01-01","line_no":2,"speaker":"B","text":"Taxes rose."})"
                      "\n"),
            write_tmp(dir, "pairs.jsonl", pairs)};
}

std::set<std::string> debates_of(const DatasetBundle& b, const std::vector<std::size_t>& idx) {
    std::set<std::string> out;
    for (auto i : idx) out.insert(b.pairs()[i].debate_id);
    return out;
}

}  // namespace

TEST_CASE("load_corpus reads valid files and counts categories") {
    auto dir = synth::temp_dir("corpus_ok");
    auto f = small_corpus(dir, R"({"debate_id":"d1","line_nos":[2],"ver_claim_ids":["c1"],"category":"clean"})"
                               "\n"
                               R"({"debate_id":"d1","line_nos":[2,1],"ver_claim_ids":["c1","c2"]})"
                               "\n");
    auto b = load_corpus(f.claims, f.transcripts, f.pairs);
    CHECK(b.claims().size() == 2);
    CHECK(b.pairs().size() == 2);
    CHECK(b.category_counts().at(Category::clean) == 1);
    CHECK(b.category_counts().at(Category::unlabeled) == 1);
    // merged part-of style input: lines space-joined in line order
    CHECK(b.pairs()[1].query_id() == "d1:1+2");
    CHECK(b.query_text(b.pairs()[1]) == "Hello. Taxes rose.");
}

TEST_CASE("load_corpus accepts an empty pairs file") {
    auto dir = synth::temp_dir("corpus_empty_pairs");
    auto f = small_corpus(dir, "");
    auto b = load_corpus(f.claims, f.transcripts, f.pairs);
    CHECK(b.pairs().empty());
    CHECK(b.claims().size() == 2);
}

TEST_CASE("load_corpus rejects dangling and duplicate references with locations") {
    auto dir = synth::temp_dir("corpus_bad");
    auto f = small_corpus(dir, R"({"debate_id":"d1","line_nos":[2],"ver_claim_ids":["c1"]})"
                               "\n"
                               R"({"debate_id":"d1","line_nos":[2],"ver_claim_ids":["nope"]})"
                               "\n");
    try {
        load_corpus(f.claims, f.transcripts, f.pairs);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("nope") != std::string::npos);
    }

    write_tmp(dir, "claims.jsonl",
              R"({"id":"c1","ver_claim":"x","title":"","body":""})"
              "\n"
              R"({"id":"c1","ver_claim":"y","title":"","body":""})"
              "\n");
    CHECK_THROWS_WITH_AS(load_corpus(f.claims, f.transcripts, f.pairs), doctest::Contains("duplicate id"),
                         ValidationError);

    write_tmp(dir, "claims.jsonl", R"({"id":"c1","title":"","body":""})" "\n");
    CHECK_THROWS_WITH_AS(load_corpus(f.claims, f.transcripts, f.pairs), doctest::Contains("ver_claim"),
                         ValidationError);

    small_corpus(dir, "");
    write_tmp(dir, "transcripts.jsonl",
              R"({"debate_id":"d1","line_no":2,"speaker":"A","text":"a"})"
              "\n"
              R"({"debate_id":"d1","line_no":1,"speaker":"A","text":"b"})"
              "\n");
    CHECK_THROWS_WITH_AS(load_corpus(f.claims, f.transcripts, f.pairs), doctest::Contains("strictly increasing"),
                         ValidationError);
}

TEST_CASE("chrono split on 70 debates is date-disjoint and exhaustive") {
    auto suite = synth::random_debates(3, 70);
    auto b = suite.bundle();
    SplitSpec spec;
    spec.kind = SplitKind::chrono;
    auto s = split(b, spec);
    CHECK(s.train.size() + s.test.size() == b.pairs().size());
    CHECK(s.excluded.empty());

    std::string max_train, min_test = "9999";
    for (auto i : s.train) max_train = std::max(max_train, *b.find_transcript(b.pairs()[i].debate_id)->event_date);
    for (auto i : s.test) min_test = std::min(min_test, *b.find_transcript(b.pairs()[i].debate_id)->event_date);
    CHECK(max_train <= min_test);
}

TEST_CASE("chrono split errors") {
    auto suite = synth::random_debates(5, 10);
    SplitSpec spec;
    spec.kind = SplitKind::chrono;
    CHECK_THROWS_WITH_AS(split(suite.bundle(), spec), doctest::Contains("needs 70 debates"), Error);

    suite.transcripts[3].event_date.reset();
    spec.chrono_train_debates = 5;
    spec.chrono_test_debates = 2;
    CHECK_THROWS_WITH_AS(split(suite.bundle(), spec), doctest::Contains("event_date"), Error);
}

TEST_CASE("single debate is indivisible under debate_random") {
    auto suite = synth::random_debates(9, 1);
    suite.pairs.clear();
    for (int i = 0; i < 3; ++i)
        suite.pairs.push_back({"d000", {suite.transcripts[0].sentences[0].line_no}, {"vc0001"}, Category::clean});
    SplitSpec spec;
    spec.kind = SplitKind::debate_random;
    spec.seed = 1;
    auto s = split(suite.bundle(), spec);
    CHECK(((s.train.size() == 3 && s.test.empty()) || (s.test.size() == 3 && s.train.empty())));
}

TEST_CASE("split invariants hold for all kinds over random corpora") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto suite = synth::random_debates(seed, 70);
        auto b = suite.bundle();
        for (auto kind : {SplitKind::chrono, SplitKind::semi_chrono, SplitKind::debate_random, SplitKind::sentence_random}) {
            SplitSpec spec;
            spec.kind = kind;
            spec.seed = seed * 31 + 1;
            auto s = split(b, spec);
            std::set<std::size_t> all(s.train.begin(), s.train.end());
            for (auto i : s.test) REQUIRE(all.insert(i).second);
            REQUIRE(all.size() == b.pairs().size());
            if (kind != SplitKind::sentence_random) {
                auto tr = debates_of(b, s.train);
                for (const auto& d : debates_of(b, s.test)) REQUIRE(tr.count(d) == 0);
            }
            auto again = split(b, spec);
            REQUIRE(again.train == s.train);
            REQUIRE(again.test == s.test);
        }
    }
}

TEST_CASE("semi_chrono puts the earliest debates of each year in train") {
    auto suite = synth::random_debates(12, 40);
    auto b = suite.bundle();
    SplitSpec spec;
    spec.kind = SplitKind::semi_chrono;
    auto s = split(b, spec);
    std::map<std::string, std::pair<std::string, std::string>> bounds;  // year -> (max train, min test)
    auto key = [&](std::size_t i) {
        const auto* t = b.find_transcript(b.pairs()[i].debate_id);
        return *t->event_date + "/" + t->debate_id;
    };
    for (auto i : s.train) {
        auto k = key(i);
        auto& v = bounds[k.substr(0, 4)].first;
        v = std::max(v, k);
    }
    for (auto i : s.test) {
        auto k = key(i);
        auto& v = bounds[k.substr(0, 4)].second;
        if (v.empty() || k < v) v = k;
    }
    for (const auto& [year, b2] : bounds)
        if (!b2.first.empty() && !b2.second.empty()) CHECK(b2.first < b2.second);
}

TEST_CASE("split json round-trips") {
    SplitResult s{SplitKind::debate_random, 42, {0, 2}, {1}, {}};
    auto back = split_from_json(split_to_json(s));
    CHECK(back.kind == s.kind);
    CHECK(back.seed == 42);
    CHECK(back.train == s.train);
    CHECK(back.test == s.test);
}
