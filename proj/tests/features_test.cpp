#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "claimrank/bm25.hpp"
#include "claimrank/embed.hpp"
#include "claimrank/error.hpp"
#include "claimrank/features.hpp"
#include "support/oracles.hpp"

using namespace claimrank;

namespace {

std::vector<VerifiedClaim> tiny_claims() {
    return {{"c1", "The wall will be paid for by Mexico.", "Border wall", "Mexico will pay. Nobody agreed.", {}, {}},
            {"c2", "Taxes went up for the middle class.", "Tax plan", "Rates rose. Some fell. Many argued.", {}, {}},
            {"c3", "Unemployment fell to record lows.", "", "", {}, {}}};
}

}  // namespace

TEST_CASE("layout dimensions") {
    FeatureConfig base;
    CHECK(base.dim() == 18);
    FeatureConfig fc31{{}, FCConfig{3, 1}, false};
    CHECK(fc31.dim() == 90);
    FeatureConfig g{{}, std::nullopt, true};
    CHECK(g.dim() == 21);
    FeatureConfig fcg{{}, FCConfig{3, 1}, true};
    CHECK(fcg.dim() == 93);
    CHECK(FeatureConfig::from_json(fcg.to_json()).hash() == fcg.hash());
    CHECK(fcg.hash() != fc31.hash());
}

TEST_CASE("similarity channels match the public single-score operations") {
    auto claims = tiny_claims();
    auto index = InvertedIndex::build(claims, {});
    HashedEmbedder e;
    SimilarityExtractor ex(index, e, claims);
    const std::string q = "Mexico will pay for the wall";
    auto qt = tokenize(q);
    for (const auto& c : claims) {
        auto s = ex.similarities(q, c.id);
        REQUIRE(s.size() == 9);
        for (auto f : kAllFields) CHECK(s[static_cast<int>(f)] == index.score(f, qt, c.id));
        CHECK(s[4] == doctest::Approx(cosine(e.embed(q), e.embed(c.ver_claim))).epsilon(1e-12));
        CHECK(s[5] == doctest::Approx(cosine(e.embed(q), e.embed(c.title))).epsilon(1e-12));
        auto top = top_sentence_sims(e, q, split_sentences(c.body), 3);
        for (int i = 0; i < 3; ++i) CHECK(s[6 + i] == doctest::Approx(top[i]).epsilon(1e-12));
        CHECK(base_similarities(q, c, index, e) == s);
    }
    auto self = ex.similarities(claims[0].ver_claim, "c1");
    CHECK(std::abs(self[4] - 1.0) < 1e-12);
    auto none = ex.similarities("zebra quokka", "c2");
    for (int i = 0; i < 4; ++i) CHECK(none[i] == 0.0);
}

TEST_CASE("reciprocal ranks") {
    auto rr = reciprocal_ranks({"b", "a"}, {{1.0}, {1.0}});
    CHECK(rr[1][0] == 1.0);
    CHECK(rr[0][0] == 0.5);

    Rng rng(2);
    std::vector<std::string> ids;
    std::vector<std::vector<double>> sims;
    for (int i = 0; i < 100; ++i) {
        ids.push_back("id" + std::to_string(rng.below(1000000)) + "_" + std::to_string(i));
        std::vector<double> row;
        for (int c = 0; c < 9; ++c) row.push_back(double(rng.below(7)) / 3.0);  // many ties
        sims.push_back(row);
    }
    auto got = reciprocal_ranks(ids, sims);
    for (int c = 0; c < 9; ++c) {
        std::vector<double> col;
        for (const auto& r : sims) col.push_back(r[c]);
        auto expect = oracle::reciprocal_ranks(ids, col);
        for (int i = 0; i < 100; ++i) CHECK(got[i][c] == expect[i]);
    }
}

TEST_CASE("scaler") {
    auto p = fit_scaler({{0, 5, 1}, {10, 5, 2}});
    auto lo = apply_scaler(p, {0, 5, 1});
    auto hi = apply_scaler(p, {10, 5, 2});
    CHECK(lo[0] == -1.0);
    CHECK(hi[0] == 1.0);
    CHECK(lo[1] == 0.0);
    CHECK(apply_scaler(p, {20, 7, -3})[0] == 1.0);
    CHECK(apply_scaler(p, {20, 7, -3})[2] == -1.0);
    CHECK(ScalerParams::from_json(p.to_json()).max == p.max);
    CHECK_THROWS_AS(apply_scaler(p, {1, 2}), Error);
}

TEST_CASE("context window and concatenation") {
    FCConfig zero{0, 0};
    auto w0 = context_window(10, 4, 4, zero);
    CHECK(w0.before.empty());
    CHECK(w0.after.empty());
    FeatureVector center(18);
    for (int i = 0; i < 18; ++i) center[i] = 0.01 * (i + 1);
    CHECK(fc_concat({}, center, {}) == center);

    auto w = context_window(10, 0, 0, {3, 1});
    REQUIRE(w.before.size() == 3);
    CHECK(std::none_of(w.before.begin(), w.before.end(), [](auto p) { return p.has_value(); }));
    REQUIRE(w.after.size() == 1);
    CHECK(*w.after[0] == 1);
    auto v = fc_concat({std::nullopt, std::nullopt, std::nullopt}, center, {center});
    REQUIRE(v.size() == 90);
    for (int i = 0; i < 54; ++i) CHECK(v[i] == 0.0);
    CHECK(std::equal(center.begin(), center.end(), v.begin() + 54));

    auto merged = context_window(10, 3, 5, {1, 1});
    CHECK(*merged.before[0] == 2);
    CHECK(*merged.after[0] == 6);
    auto tail = context_window(10, 9, 9, {0, 2});
    CHECK_FALSE(tail.after[0].has_value());
}

TEST_CASE("assemble gates the global scores") {
    FeatureVector base(18, 0.5);
    GlobalScores g{0.7, 0.2, 0.1, true};
    FeatureConfig off;
    CHECK(assemble(base, g, off).size() == 18);
    FeatureConfig on{{}, std::nullopt, true};
    auto v = assemble(base, g, on);
    REQUIRE(v.size() == 21);
    CHECK(v[18] == 0.7);
    CHECK(v[20] == 0.1);
    CHECK_THROWS_AS(assemble(FeatureVector(17), g, off), Error);
}
