#include <doctest.h>

#include "claimrank/context.hpp"
#include "claimrank/embed.hpp"
#include "claimrank/error.hpp"
#include "support/synthetic.hpp"

using namespace claimrank;

TEST_CASE("identity resolver when nothing is loaded") {
    CorefResolutionSet none;
    CHECK(none.resolve_line("d1", 4, "He said it.") == "He said it.");
}

TEST_CASE("source coref file covers a 3-sentence transcript") {
    auto dir = synth::temp_dir("coref_source");
    write_file(dir + "/coref.jsonl",
               R"({"side":"source","doc_id":"d1","unit":1,"resolved_text":"Obama spoke."})"
               "\n"
               R"({"side":"source","doc_id":"d1","unit":"2","resolved_text":"Obama left."})"
               "\n"
               R"({"side":"source","doc_id":"d1","unit":3,"resolved_text":"Biden stayed."})"
               "\n");
    auto set = CorefResolutionSet::load(dir + "/coref.jsonl", CorefSide::source);
    Transcript t{"d1", "2019-01-01", {{"d1", 1, "A", "He spoke.", {}}, {"d1", 2, "A", "He left.", {}},
                                      {"d1", 3, "B", "He stayed.", {}}}};
    auto r = resolve_transcript(t, set);
    CHECK(r.sentences[0].text == "Obama spoke.");
    CHECK(r.sentences[1].text == "Obama left.");
    CHECK(r.sentences[2].text == "Biden stayed.");
    CHECK(set.resolve_line("d1", 4, "raw") == "raw");
    CHECK(set.resolve_line("d2", 1, "raw") == "raw");

    set.save(dir + "/again.jsonl");
    CHECK(CorefResolutionSet::load(dir + "/again.jsonl", CorefSide::source).entries() == set.entries());
}

TEST_CASE("coref validation") {
    auto dir = synth::temp_dir("coref_bad");
    write_file(dir + "/wrong_side.jsonl", R"({"side":"target","doc_id":"c","unit":"body","resolved_text":"x"})" "\n");
    CHECK_THROWS_AS(CorefResolutionSet::load(dir + "/wrong_side.jsonl", CorefSide::source), ValidationError);
    write_file(dir + "/bad_unit.jsonl", R"({"side":"target","doc_id":"c","unit":"title","resolved_text":"x"})" "\n");
    CHECK_THROWS_AS(CorefResolutionSet::load(dir + "/bad_unit.jsonl", CorefSide::target), ValidationError);
    write_file(dir + "/dup.jsonl",
               R"({"side":"target","doc_id":"c","unit":"body","resolved_text":"x"})"
               "\n"
               R"({"side":"target","doc_id":"c","unit":"body","resolved_text":"y"})"
               "\n");
    CHECK_THROWS_AS(CorefResolutionSet::load(dir + "/dup.jsonl", CorefSide::target), ValidationError);

    CorefResolutionSet target(CorefSide::target);
    target.add("c1", "body", "Resolved body.");
    VerifiedClaim c{"c1", "He did.", "T", "It was.", {}, {}};
    auto r = resolve_claim(c, target);
    CHECK(r.ver_claim == "He did.");
    CHECK(r.body == "Resolved body.");
}

TEST_CASE("global score lookup and validation") {
    GlobalScoreSet set;
    set.add("q", "c", 0.7, 0.2, 0.1);
    auto s = set.lookup("q", "c");
    CHECK(s.present);
    CHECK(s.p_support == 0.7);
    CHECK(s.p_refute == 0.2);
    CHECK(s.p_nei == 0.1);
    auto absent = set.lookup("q", "other");
    CHECK_FALSE(absent.present);
    CHECK(absent.p_support == 0.0);
    CHECK(absent.p_refute == 0.0);
    CHECK(absent.p_nei == 0.0);

    auto dir = synth::temp_dir("global");
    write_file(dir + "/g.jsonl",
               R"({"query_id":"q","ver_claim_id":"c","p_support":0.7,"p_refute":0.2,"p_nei":0.1})"
               "\n"
               R"({"query_id":"q","ver_claim_id":"d","p_support":0.9,"p_refute":0.5,"p_nei":0.1})"
               "\n");
    try {
        GlobalScoreSet::load(dir + "/g.jsonl");
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(e.line() == 2);
    }
    set.save(dir + "/ok.jsonl");
    CHECK(GlobalScoreSet::load(dir + "/ok.jsonl").lookup("q", "c").p_support == 0.7);
}

TEST_CASE("xh graphs") {
    HashedEmbedder e;
    VerifiedClaim empty_body{"c1", "The wall.", "Title here", "", {}, {}};
    auto g = build_xh_graph("d:1", "the wall", empty_body, e);
    REQUIRE(g.nodes.size() == 2);
    CHECK(g.nodes[0].kind == "claim");
    CHECK(g.nodes[1].kind == "title");

    VerifiedClaim full{"c2", "Claim.", "", "One. Two wall. Three. Four wall here.", {}, {}};
    auto g2 = build_xh_graph("d:1", "wall here", full, e);
    REQUIRE(g2.nodes.size() == 4);
    CHECK(g2.nodes[1].text == "Four wall here.");

    std::vector<XhGraph> graphs;
    std::vector<VerifiedClaim> cands;
    for (int i = 0; i < 100; ++i) cands.push_back({"c" + std::to_string(i), "x " + std::to_string(i), "t", "b.", {}, {}});
    for (const auto& q : {"q1", "q2"})
        for (const auto& c : cands) graphs.push_back(build_xh_graph(q, "x", c, e));
    auto dir = synth::temp_dir("xh");
    write_xh_graphs(dir + "/xh.jsonl", graphs);
    auto back = read_xh_graphs(dir + "/xh.jsonl");
    CHECK(back.size() == 200);
    CHECK(back == graphs);
}
