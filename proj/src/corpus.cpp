#include "claimrank/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "claimrank/error.hpp"

namespace claimrank {

namespace {

bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (s[i] < '0' || s[i] > '9') return false;
    int month = std::stoi(s.substr(5, 2));
    int day = std::stoi(s.substr(8, 2));
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::optional<std::string> optional_string(const json& obj, const char* field,
                                           const std::string& path, std::size_t line) {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string())
        throw ValidationError(path, line, std::string("field '") + field + "' must be a string");
    return it->get<std::string>();
}

std::size_t ratio_count(double ratio, std::size_t n) {
    // Guard against 0.8 * 5 landing a hair above 4.
    return std::min(n, static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(n) - 1e-9)));
}

}  // namespace

std::optional<std::size_t> Transcript::position_of(std::int64_t line_no) const {
    auto it = std::lower_bound(sentences.begin(), sentences.end(), line_no,
                               [](const TranscriptSentence& s, std::int64_t l) { return s.line_no < l; });
    if (it == sentences.end() || it->line_no != line_no) return std::nullopt;
    return static_cast<std::size_t>(it - sentences.begin());
}

std::string to_string(Category c) {
    switch (c) {
        case Category::clean: return "clean";
        case Category::clean_hard: return "clean-hard";
        case Category::part_of: return "part-of";
        case Category::context_dep: return "context-dep";
        case Category::unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

std::optional<Category> parse_category(const std::string& name) {
    if (name == "clean") return Category::clean;
    if (name == "clean-hard") return Category::clean_hard;
    if (name == "part-of") return Category::part_of;
    if (name == "context-dep") return Category::context_dep;
    if (name == "unlabeled") return Category::unlabeled;
    return std::nullopt;
}

std::string ClaimPair::query_id() const {
    std::string id = debate_id + ":";
    for (std::size_t i = 0; i < line_nos.size(); ++i) {
        if (i) id += '+';
        id += std::to_string(line_nos[i]);
    }
    return id;
}

DatasetBundle::DatasetBundle(std::vector<VerifiedClaim> claims, std::vector<Transcript> transcripts,
                             std::vector<ClaimPair> pairs)
    : claims_(std::move(claims)), transcripts_(std::move(transcripts)), pairs_(std::move(pairs)) {
    for (std::size_t i = 0; i < claims_.size(); ++i) {
        const auto& c = claims_[i];
        if (c.id.empty()) throw Error("verified claim with empty id");
        if (c.ver_claim.empty()) throw Error("verified claim '" + c.id + "' has empty ver_claim");
        if (!claim_index_.emplace(c.id, i).second) throw Error("duplicate verified claim id '" + c.id + "'");
    }
    std::sort(transcripts_.begin(), transcripts_.end(),
              [](const Transcript& a, const Transcript& b) { return a.debate_id < b.debate_id; });
    for (std::size_t i = 0; i < transcripts_.size(); ++i) {
        const auto& t = transcripts_[i];
        if (!transcript_index_.emplace(t.debate_id, i).second)
            throw Error("duplicate transcript '" + t.debate_id + "'");
        for (std::size_t s = 1; s < t.sentences.size(); ++s)
            if (t.sentences[s].line_no <= t.sentences[s - 1].line_no)
                throw Error("transcript '" + t.debate_id + "' line numbers not strictly increasing");
    }
    for (auto& p : pairs_) {
        const Transcript* t = find_transcript(p.debate_id);
        if (!t) throw Error("pair references unknown debate '" + p.debate_id + "'");
        if (p.line_nos.empty() || p.ver_claim_ids.empty())
            throw Error("pair " + p.query_id() + " has empty line_nos or ver_claim_ids");
        std::sort(p.line_nos.begin(), p.line_nos.end());
        for (auto l : p.line_nos)
            if (!t->position_of(l))
                throw Error("pair references unknown line " + std::to_string(l) + " in debate '" +
                            p.debate_id + "'");
        for (const auto& id : p.ver_claim_ids)
            if (!find_claim(id)) throw Error("pair references unknown ver_claim_id '" + id + "'");
    }
}

const VerifiedClaim* DatasetBundle::find_claim(const std::string& id) const {
    auto it = claim_index_.find(id);
    return it == claim_index_.end() ? nullptr : &claims_[it->second];
}

const Transcript* DatasetBundle::find_transcript(const std::string& debate_id) const {
    auto it = transcript_index_.find(debate_id);
    return it == transcript_index_.end() ? nullptr : &transcripts_[it->second];
}

std::string DatasetBundle::query_text(const ClaimPair& pair) const {
    const Transcript* t = find_transcript(pair.debate_id);
    std::string text;
    for (auto l : pair.line_nos) {
        if (!text.empty()) text += ' ';
        text += t->sentences[*t->position_of(l)].text;
    }
    return text;
}

std::map<Category, std::size_t> DatasetBundle::category_counts() const {
    std::map<Category, std::size_t> counts;
    for (const auto& p : pairs_) ++counts[p.category];
    return counts;
}

DatasetBundle load_corpus(const std::string& claims_path, const std::string& transcripts_path,
                          const std::string& pairs_path) {
    std::vector<VerifiedClaim> claims;
    std::unordered_set<std::string> claim_ids;
    for_each_jsonl(claims_path, [&](std::size_t line, const json& obj) {
        VerifiedClaim c;
        c.id = require_string(obj, "id", claims_path, line, false);
        c.ver_claim = require_string(obj, "ver_claim", claims_path, line, false);
        c.title = require_string(obj, "title", claims_path, line);
        c.body = require_string(obj, "body", claims_path, line);
        c.url = optional_string(obj, "url", claims_path, line);
        c.date = optional_string(obj, "date", claims_path, line);
        if (c.date && !is_iso_date(*c.date))
            throw ValidationError(claims_path, line, "field 'date' is not an ISO-8601 date");
        if (!claim_ids.insert(c.id).second)
            throw ValidationError(claims_path, line, "duplicate id '" + c.id + "'");
        claims.push_back(std::move(c));
    });

    std::vector<Transcript> transcripts;
    std::unordered_map<std::string, std::size_t> by_debate;
    for_each_jsonl(transcripts_path, [&](std::size_t line, const json& obj) {
        TranscriptSentence s;
        s.debate_id = require_string(obj, "debate_id", transcripts_path, line, false);
        s.line_no = require_int(obj, "line_no", transcripts_path, line);
        if (s.line_no <= 0) throw ValidationError(transcripts_path, line, "field 'line_no' must be positive");
        s.speaker = require_string(obj, "speaker", transcripts_path, line);
        s.text = require_string(obj, "text", transcripts_path, line);
        s.resolved_text = optional_string(obj, "resolved_text", transcripts_path, line);
        auto date = optional_string(obj, "event_date", transcripts_path, line);
        if (date && !is_iso_date(*date))
            throw ValidationError(transcripts_path, line, "field 'event_date' is not an ISO-8601 date");

        auto [it, inserted] = by_debate.emplace(s.debate_id, transcripts.size());
        if (inserted) {
            transcripts.push_back(Transcript{s.debate_id, date, {}});
        }
        Transcript& t = transcripts[it->second];
        if (t.event_date != date)
            throw ValidationError(transcripts_path, line,
                                  "field 'event_date' differs from earlier lines of debate '" + s.debate_id + "'");
        if (!t.sentences.empty() && s.line_no <= t.sentences.back().line_no)
            throw ValidationError(transcripts_path, line,
                                  "field 'line_no' not strictly increasing within debate '" + s.debate_id + "'");
        t.sentences.push_back(std::move(s));
    });

    std::vector<ClaimPair> pairs;
    for_each_jsonl(pairs_path, [&](std::size_t line, const json& obj) {
        ClaimPair p;
        p.debate_id = require_string(obj, "debate_id", pairs_path, line, false);
        auto t_it = by_debate.find(p.debate_id);
        if (t_it == by_debate.end())
            throw ValidationError(pairs_path, line, "unknown debate_id '" + p.debate_id + "'");
        const Transcript& t = transcripts[t_it->second];

        auto lines = obj.find("line_nos");
        if (lines == obj.end() || !lines->is_array() || lines->empty())
            throw ValidationError(pairs_path, line, "field 'line_nos' must be a non-empty array");
        for (const auto& l : *lines) {
            if (!l.is_number_integer())
                throw ValidationError(pairs_path, line, "field 'line_nos' must hold integers");
            auto v = l.get<std::int64_t>();
            if (!t.position_of(v))
                throw ValidationError(pairs_path, line,
                                      "unknown line_no " + std::to_string(v) + " in debate '" + p.debate_id + "'");
            p.line_nos.push_back(v);
        }
        auto ids = obj.find("ver_claim_ids");
        if (ids == obj.end() || !ids->is_array() || ids->empty())
            throw ValidationError(pairs_path, line, "field 'ver_claim_ids' must be a non-empty array");
        for (const auto& v : *ids) {
            if (!v.is_string()) throw ValidationError(pairs_path, line, "field 'ver_claim_ids' must hold strings");
            auto id = v.get<std::string>();
            if (!claim_ids.count(id))
                throw ValidationError(pairs_path, line, "unknown ver_claim_id '" + id + "'");
            p.ver_claim_ids.push_back(std::move(id));
        }
        if (auto cat = optional_string(obj, "category", pairs_path, line)) {
            auto parsed = parse_category(*cat);
            if (!parsed) throw ValidationError(pairs_path, line, "unknown category '" + *cat + "'");
            p.category = *parsed;
        }
        pairs.push_back(std::move(p));
    });

    return DatasetBundle(std::move(claims), std::move(transcripts), std::move(pairs));
}

std::string to_string(SplitKind k) {
    switch (k) {
        case SplitKind::chrono: return "chrono";
        case SplitKind::semi_chrono: return "semi_chrono";
        case SplitKind::debate_random: return "debate_random";
        case SplitKind::sentence_random: return "sentence_random";
    }
    return "chrono";
}

SplitKind parse_split_kind(const std::string& name) {
    if (name == "chrono") return SplitKind::chrono;
    if (name == "semi_chrono") return SplitKind::semi_chrono;
    if (name == "debate_random") return SplitKind::debate_random;
    if (name == "sentence_random") return SplitKind::sentence_random;
    throw Error("unknown split kind '" + name + "'");
}

SplitResult split(const DatasetBundle& bundle, const SplitSpec& spec) {
    if (!(spec.train_ratio > 0.0 && spec.train_ratio < 1.0))
        throw Error("split train_ratio must lie in (0, 1)");
    if (spec.chrono_train_debates <= 0 || spec.chrono_test_debates <= 0)
        throw Error("chrono debate counts must be positive");

    SplitResult out;
    out.kind = spec.kind;
    out.seed = spec.seed;
    const auto& pairs = bundle.pairs();

    if (spec.kind == SplitKind::sentence_random) {
        std::vector<std::size_t> order(pairs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        Rng rng(spec.seed);
        rng.shuffle(order);
        std::size_t n_train = ratio_count(spec.train_ratio, order.size());
        out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
        out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
        std::sort(out.train.begin(), out.train.end());
        std::sort(out.test.begin(), out.test.end());
        return out;
    }

    // Debate-level kinds: decide a side per debate, then route pairs.
    enum class Side { train, test, excluded };
    std::unordered_map<std::string, Side> side;
    const auto& transcripts = bundle.transcripts();  // sorted by debate_id

    auto by_date = [&](std::vector<const Transcript*> ts) {
        for (const auto* t : ts)
            if (!t->event_date)
                throw Error("debate '" + t->debate_id + "' has no event_date; required by " + to_string(spec.kind) +
                            " split");
        std::stable_sort(ts.begin(), ts.end(), [](const Transcript* a, const Transcript* b) {
            if (*a->event_date != *b->event_date) return *a->event_date < *b->event_date;
            return a->debate_id < b->debate_id;
        });
        return ts;
    };

    std::vector<const Transcript*> all;
    for (const auto& t : transcripts) all.push_back(&t);

    switch (spec.kind) {
        case SplitKind::chrono: {
            auto ordered = by_date(all);
            const auto n_train = static_cast<std::size_t>(spec.chrono_train_debates);
            const auto n_test = static_cast<std::size_t>(spec.chrono_test_debates);
            if (ordered.size() < n_train + n_test)
                throw Error("chrono split needs " + std::to_string(n_train + n_test) + " debates, corpus has " +
                            std::to_string(ordered.size()));
            for (std::size_t i = 0; i < ordered.size(); ++i) {
                Side s = i < n_train ? Side::train : (i >= ordered.size() - n_test ? Side::test : Side::excluded);
                side[ordered[i]->debate_id] = s;
            }
            break;
        }
        case SplitKind::semi_chrono: {
            auto ordered = by_date(all);
            std::map<std::string, std::vector<const Transcript*>> by_year;
            for (const auto* t : ordered) by_year[t->event_date->substr(0, 4)].push_back(t);
            for (const auto& [year, ts] : by_year) {
                std::size_t n_train = ratio_count(spec.train_ratio, ts.size());
                for (std::size_t i = 0; i < ts.size(); ++i)
                    side[ts[i]->debate_id] = i < n_train ? Side::train : Side::test;
            }
            break;
        }
        case SplitKind::debate_random: {
            Rng rng(spec.seed);
            rng.shuffle(all);
            std::size_t n_train = ratio_count(spec.train_ratio, all.size());
            for (std::size_t i = 0; i < all.size(); ++i)
                side[all[i]->debate_id] = i < n_train ? Side::train : Side::test;
            break;
        }
        case SplitKind::sentence_random: break;
    }

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        switch (side.at(pairs[i].debate_id)) {
            case Side::train: out.train.push_back(i); break;
            case Side::test: out.test.push_back(i); break;
            case Side::excluded: out.excluded.push_back(i); break;
        }
    }
    return out;
}

json split_to_json(const SplitResult& s) {
    json j;
    j["kind"] = to_string(s.kind);
    j["seed"] = s.seed;
    j["train"] = s.train;
    j["test"] = s.test;
    if (!s.excluded.empty()) j["excluded"] = s.excluded;
    return j;
}

SplitResult split_from_json(const json& j) {
    SplitResult s;
    try {
        s.kind = parse_split_kind(j.at("kind").get<std::string>());
        s.seed = j.at("seed").get<std::uint64_t>();
        s.train = j.at("train").get<std::vector<std::size_t>>();
        s.test = j.at("test").get<std::vector<std::size_t>>();
        if (j.contains("excluded")) s.excluded = j.at("excluded").get<std::vector<std::size_t>>();
    } catch (const json::exception& e) {
        throw Error(std::string("malformed split file: ") + e.what());
    }
    return s;
}

}  // namespace claimrank
