#include "claimrank/eval.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "claimrank/error.hpp"

namespace claimrank {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double average_precision(const std::vector<std::string>& ranked_ids, const std::set<std::string>& relevant) {
    if (relevant.empty()) throw Error("average_precision: empty relevant set");
    std::set<std::string> seen;
    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t r = 0; r < ranked_ids.size(); ++r) {
        if (!seen.insert(ranked_ids[r]).second) throw Error("average_precision: duplicate id '" + ranked_ids[r] + "'");
        if (relevant.count(ranked_ids[r])) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(r + 1);
        }
    }
    return sum / static_cast<double>(relevant.size());
}

namespace {

std::vector<std::string> ids_of(const std::vector<RunEntry>& entries) {
    std::vector<std::string> ids;
    ids.reserve(entries.size());
    for (const auto& e : entries) ids.push_back(e.ver_claim_id);
    return ids;
}

const std::vector<RunEntry>& entries_of(const Run& run, const std::string& query_id) {
    static const std::vector<RunEntry> kEmpty;
    auto it = run.find(query_id);
    return it == run.end() ? kEmpty : it->second;
}

}  // namespace

// Judged queries drive the evaluation: a judged query missing from the run
// scores 0 and run queries without judgments are ignored.
EvalReport evaluate(const Run& run, const Qrels& qrels) {
    EvalReport report;
    std::map<Category, double> sums;
    double total = 0.0;
    for (const auto& [qid, q] : qrels) {
        auto ids = ids_of(entries_of(run, qid));
        double ap = average_precision(ids, q.relevant);
        std::set<std::string> retrieved(ids.begin(), ids.end());
        for (const auto& r : q.relevant)
            if (!retrieved.count(r)) ++report.miss_count;
        report.per_query_ap[qid] = ap;
        total += ap;
        if (q.category != Category::unlabeled) {
            sums[q.category] += ap;
            ++report.queries_by_category[q.category];
        }
    }
    report.query_count = qrels.size();
    report.map_overall = qrels.empty() ? 0.0 : total / static_cast<double>(qrels.size());
    for (const auto& [cat, sum] : sums)
        report.map_by_category[cat] = sum / static_cast<double>(report.queries_by_category[cat]);
    return report;
}

double mean_reciprocal_rank(const Run& run, const Qrels& qrels) {
    if (qrels.empty()) return 0.0;
    double total = 0.0;
    for (const auto& [qid, q] : qrels) {
        const auto& entries = entries_of(run, qid);
        for (std::size_t r = 0; r < entries.size(); ++r) {
            if (q.relevant.count(entries[r].ver_claim_id)) {
                total += 1.0 / static_cast<double>(r + 1);
                break;
            }
        }
    }
    return total / static_cast<double>(qrels.size());
}

json EvalReport::to_json() const {
    json j;
    j["map_overall"] = map_overall;
    j["query_count"] = query_count;
    j["miss_count"] = miss_count;
    json cats = json::object();
    for (auto c : kLabeledCategories) {
        auto it = map_by_category.find(c);
        cats[to_string(c)] = it == map_by_category.end() ? json(nullptr) : json(it->second);
    }
    j["map_by_category"] = cats;
    j["per_query_ap"] = per_query_ap;
    return j;
}

std::string EvalReport::to_table() const {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-6s %-10s %-10s %-10s %-10s %-11s %-7s\n", "", "Overall", "clean", "clean-hard",
                  "part-of", "context-dep", "queries");
    out << line;
    auto cell = [&](Category c) {
        auto it = map_by_category.find(c);
        if (it == map_by_category.end()) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3f", it->second);
        return std::string(buf);
    };
    std::snprintf(line, sizeof(line), "%-6s %-10.3f %-10s %-10s %-10s %-11s %-7zu\n", "MAP", map_overall,
                  cell(Category::clean).c_str(), cell(Category::clean_hard).c_str(), cell(Category::part_of).c_str(),
                  cell(Category::context_dep).c_str(), query_count);
    out << line;
    return out.str();
}

void write_run(const std::string& path, const Run& run, const std::string& tag) {
    std::string out;
    for (const auto& [qid, entries] : run)
        for (std::size_t r = 0; r < entries.size(); ++r)
            out += qid + " " + entries[r].ver_claim_id + " " + std::to_string(r + 1) + " " +
                   format_double(entries[r].score) + " " + tag + "\n";
    write_file(path, out);
}

Run read_run(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open run file " + path);
    std::map<std::string, std::vector<std::pair<long, RunEntry>>> staged;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string qid, vid, tag;
        long rank = 0;
        double score = 0.0;
        if (!(ss >> qid)) continue;
        if (!(ss >> vid >> rank >> score >> tag))
            throw ValidationError(path, line_no, "expected: query_id ver_claim_id rank score tag");
        if (rank <= 0) throw ValidationError(path, line_no, "rank must be positive");
        staged[qid].push_back({rank, {vid, score}});
    }
    Run run;
    for (auto& [qid, entries] : staged) {
        std::stable_sort(entries.begin(), entries.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        auto& out = run[qid];
        for (auto& e : entries) out.push_back(std::move(e.second));
    }
    return run;
}

void write_qrels(const std::string& path, const Qrels& qrels) {
    std::string out;
    for (const auto& [qid, q] : qrels)
        for (const auto& id : q.relevant) out += qid + " " + id + " " + to_string(q.category) + "\n";
    write_file(path, out);
}

Qrels read_qrels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open qrels file " + path);
    Qrels qrels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string qid, vid, cat = "unlabeled";
        if (!(ss >> qid)) continue;
        if (!(ss >> vid)) throw ValidationError(path, line_no, "expected: query_id ver_claim_id [category]");
        ss >> cat;
        auto parsed = parse_category(cat);
        if (!parsed) throw ValidationError(path, line_no, "unknown category '" + cat + "'");
        auto& q = qrels[qid];
        if (!q.relevant.empty() && q.category != *parsed)
            throw ValidationError(path, line_no, "conflicting category for query '" + qid + "'");
        q.category = *parsed;
        q.relevant.insert(vid);
    }
    return qrels;
}

Qrels qrels_for(const DatasetBundle& bundle, const std::vector<std::size_t>& pair_indices) {
    Qrels qrels;
    for (auto i : pair_indices) {
        const auto& p = bundle.pairs().at(i);
        auto& q = qrels[p.query_id()];
        q.relevant.insert(p.ver_claim_ids.begin(), p.ver_claim_ids.end());
        q.category = p.category;
    }
    return qrels;
}

}  // namespace claimrank
