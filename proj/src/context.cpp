#include "claimrank/context.hpp"

#include <algorithm>
#include <cmath>

#include "claimrank/error.hpp"
#include "claimrank/textproc.hpp"

namespace claimrank {

std::string to_string(CorefSide s) { return s == CorefSide::source ? "source" : "target"; }

CorefResolutionSet CorefResolutionSet::load(const std::string& path, CorefSide side) {
    CorefResolutionSet set(side);
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        auto s = require_string(obj, "side", path, line);
        if (s != "source" && s != "target") throw ValidationError(path, line, "field 'side' must be source or target");
        if (s != to_string(side))
            throw ValidationError(path, line, "expected side '" + to_string(side) + "', found '" + s + "'");
        auto doc_id = require_string(obj, "doc_id", path, line, false);
        std::string unit;
        auto it = obj.find("unit");
        if (it == obj.end()) throw ValidationError(path, line, "missing field 'unit'");
        if (side == CorefSide::source) {
            std::int64_t line_no = 0;
            if (it->is_number_integer()) {
                line_no = it->get<std::int64_t>();
            } else if (it->is_string()) {
                try {
                    std::size_t used = 0;
                    line_no = std::stoll(it->get<std::string>(), &used);
                    if (used != it->get<std::string>().size()) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw ValidationError(path, line, "field 'unit' must be a line number for source resolutions");
                }
            } else {
                throw ValidationError(path, line, "field 'unit' must be a line number for source resolutions");
            }
            if (line_no <= 0) throw ValidationError(path, line, "field 'unit' must be a positive line number");
            unit = std::to_string(line_no);
        } else {
            if (!it->is_string() || (*it != "ver_claim" && *it != "body"))
                throw ValidationError(path, line, "field 'unit' must be \"ver_claim\" or \"body\" for target resolutions");
            unit = it->get<std::string>();
        }
        auto text_it = obj.find("resolved_text");
        if (text_it == obj.end() || !text_it->is_string())
            throw ValidationError(path, line, "field 'resolved_text' must be a string");
        if (!set.entries_.emplace(Key{doc_id, unit}, text_it->get<std::string>()).second)
            throw ValidationError(path, line, "duplicate key (" + doc_id + ", " + unit + ")");
    });
    return set;
}

void CorefResolutionSet::add(const std::string& doc_id, const std::string& unit, std::string resolved_text) {
    if (side_ == CorefSide::target && unit != "ver_claim" && unit != "body")
        throw Error("target resolution unit must be ver_claim or body");
    if (!entries_.emplace(Key{doc_id, unit}, std::move(resolved_text)).second)
        throw Error("duplicate coref key (" + doc_id + ", " + unit + ")");
}

const std::string& CorefResolutionSet::resolve(const std::string& doc_id, const std::string& unit,
                                               const std::string& raw_text) const {
    auto it = entries_.find(Key{doc_id, unit});
    return it == entries_.end() ? raw_text : it->second;
}

void CorefResolutionSet::save(const std::string& path) const {
    std::string out;
    for (const auto& [key, text] : entries_) {
        json j{{"side", to_string(side_)}, {"doc_id", key.first}};
        if (side_ == CorefSide::source) j["unit"] = std::stoll(key.second);
        else j["unit"] = key.second;
        j["resolved_text"] = text;
        out += j.dump() + "\n";
    }
    write_file(path, out);
}

Transcript resolve_transcript(const Transcript& t, const CorefResolutionSet& coref) {
    Transcript out = t;
    if (coref.empty()) return out;
    for (auto& s : out.sentences) s.text = coref.resolve_line(t.debate_id, s.line_no, s.text);
    return out;
}

VerifiedClaim resolve_claim(const VerifiedClaim& c, const CorefResolutionSet& coref) {
    VerifiedClaim out = c;
    if (coref.empty()) return out;
    out.ver_claim = coref.resolve(c.id, "ver_claim", c.ver_claim);
    out.body = coref.resolve(c.id, "body", c.body);
    return out;
}

GlobalScoreSet GlobalScoreSet::load(const std::string& path) {
    GlobalScoreSet set;
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        auto q = require_string(obj, "query_id", path, line, false);
        auto v = require_string(obj, "ver_claim_id", path, line, false);
        GlobalScores g;
        g.p_support = require_number(obj, "p_support", path, line);
        g.p_refute = require_number(obj, "p_refute", path, line);
        g.p_nei = require_number(obj, "p_nei", path, line);
        g.present = true;
        for (double p : {g.p_support, g.p_refute, g.p_nei})
            if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(path, line, "probability outside [0, 1]");
        double sum = g.p_support + g.p_refute + g.p_nei;
        if (std::abs(sum - 1.0) > kSumTolerance)
            throw ValidationError(path, line, "probabilities sum to " + json(sum).dump() + ", expected 1");
        if (!set.entries_.emplace(std::make_pair(q, v), g).second)
            throw ValidationError(path, line, "duplicate (query_id, ver_claim_id)");
    });
    return set;
}

void GlobalScoreSet::add(const std::string& query_id, const std::string& ver_claim_id, double p_support,
                         double p_refute, double p_nei) {
    for (double p : {p_support, p_refute, p_nei})
        if (!(p >= 0.0 && p <= 1.0)) throw Error("global score probability outside [0, 1]");
    if (std::abs(p_support + p_refute + p_nei - 1.0) > kSumTolerance) throw Error("global scores must sum to 1");
    entries_[{query_id, ver_claim_id}] = GlobalScores{p_support, p_refute, p_nei, true};
}

GlobalScores GlobalScoreSet::lookup(const std::string& query_id, const std::string& ver_claim_id) const {
    auto it = entries_.find({query_id, ver_claim_id});
    return it == entries_.end() ? GlobalScores{} : it->second;
}

void GlobalScoreSet::save(const std::string& path) const {
    std::string out;
    for (const auto& [key, g] : entries_) {
        out += json{{"query_id", key.first},
                    {"ver_claim_id", key.second},
                    {"p_support", g.p_support},
                    {"p_refute", g.p_refute},
                    {"p_nei", g.p_nei}}
                   .dump() +
               "\n";
    }
    write_file(path, out);
}

XhGraph build_xh_graph(const std::string& query_id, const std::string& query_text, const VerifiedClaim& claim,
                       const EmbeddingProvider& provider) {
    XhGraph g{query_id, query_text, claim.id, {}};
    if (!claim.ver_claim.empty()) g.nodes.push_back({"claim", claim.ver_claim});
    if (!claim.title.empty()) g.nodes.push_back({"title", claim.title});

    auto sentences = split_sentences(claim.body);
    if (!sentences.empty()) {
        auto q = provider.embed(query_text);
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t i = 0; i < sentences.size(); ++i)
            ranked.emplace_back(cosine(q, provider.embed(sentences[i])), i);
        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t i = 0; i < std::min(kXhSentenceNodes, ranked.size()); ++i)
            g.nodes.push_back({"sentence", sentences[ranked[i].second]});
    }
    return g;
}

void write_xh_graphs(const std::string& path, const std::vector<XhGraph>& graphs) {
    std::string out;
    for (const auto& g : graphs) {
        json nodes = json::array();
        for (const auto& n : g.nodes) nodes.push_back({{"kind", n.kind}, {"text", n.text}});
        out += json{{"query_id", g.query_id},
                    {"query_text", g.query_text},
                    {"ver_claim_id", g.ver_claim_id},
                    {"nodes", nodes}}
                   .dump() +
               "\n";
    }
    write_file(path, out);
}

std::vector<XhGraph> read_xh_graphs(const std::string& path) {
    std::vector<XhGraph> graphs;
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        XhGraph g;
        g.query_id = require_string(obj, "query_id", path, line, false);
        g.query_text = require_string(obj, "query_text", path, line);
        g.ver_claim_id = require_string(obj, "ver_claim_id", path, line, false);
        auto it = obj.find("nodes");
        if (it == obj.end() || !it->is_array()) throw ValidationError(path, line, "field 'nodes' must be an array");
        if (it->size() > 2 + kXhSentenceNodes) throw ValidationError(path, line, "too many nodes");
        for (const auto& n : *it) {
            if (!n.is_object()) throw ValidationError(path, line, "node must be an object");
            g.nodes.push_back({require_string(n, "kind", path, line), require_string(n, "text", path, line)});
        }
        graphs.push_back(std::move(g));
    });
    return graphs;
}

}  // namespace claimrank
