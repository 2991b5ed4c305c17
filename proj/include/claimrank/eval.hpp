#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "claimrank/corpus.hpp"

namespace claimrank {

struct QueryQrels {
    std::set<std::string> relevant;
    Category category = Category::unlabeled;
};

using Qrels = std::map<std::string, QueryQrels>;

struct RunEntry {
    std::string ver_claim_id;
    double score = 0.0;
};

// query_id -> ranked list (best first).
using Run = std::map<std::string, std::vector<RunEntry>>;

struct EvalReport {
    double map_overall = 0.0;
    std::map<Category, double> map_by_category;  // labeled categories with at least one query
    std::map<Category, std::size_t> queries_by_category;
    std::map<std::string, double> per_query_ap;
    std::size_t query_count = 0;
    std::size_t miss_count = 0;  // relevant ids absent from the ranked list

    json to_json() const;
    std::string to_table() const;
};

// (1/|relevant|) * sum over relevant hits at rank r of (relevant in top r) / r.
double average_precision(const std::vector<std::string>& ranked_ids, const std::set<std::string>& relevant);

EvalReport evaluate(const Run& run, const Qrels& qrels);
double mean_reciprocal_rank(const Run& run, const Qrels& qrels);

// Run file: one "query_id ver_claim_id rank score tag" line per entry.
void write_run(const std::string& path, const Run& run, const std::string& tag);
Run read_run(const std::string& path);

// Qrels file: one "query_id ver_claim_id category" line per relevant id.
void write_qrels(const std::string& path, const Qrels& qrels);
Qrels read_qrels(const std::string& path);

Qrels qrels_for(const DatasetBundle& bundle, const std::vector<std::size_t>& pair_indices);

// Shortest decimal that round-trips, without locale effects.
std::string format_double(double v);

}  // namespace claimrank
