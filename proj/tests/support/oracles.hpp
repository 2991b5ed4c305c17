#pragma once

// Brute-force reference implementations used only by tests. None of these
// call into the library code paths they check.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// AP by locating each relevant id and counting relevant ids in its prefix.
double average_precision(const std::vector<std::string>& ranked, const std::set<std::string>& relevant);

// Okapi BM25 over pre-tokenized documents, df and tf counted by scanning.
std::vector<double> bm25_scores(const std::vector<std::vector<std::string>>& docs,
                                const std::vector<std::string>& query, double k1, double b);

// rank of each candidate on one channel: 1 + #{better} where better means
// higher value, or equal value and smaller id.
std::vector<double> reciprocal_ranks(const std::vector<std::string>& ids, const std::vector<double>& values);

struct QpResult {
    std::vector<double> alpha;
    double objective = 0.0;  // sum(alpha) - 1/2 alpha^T Q alpha
    std::size_t iterations = 0;
};

// Dense box-constrained QP  max sum(a) - 1/2 a^T Q a, 0 <= a <= C, solved by
// accelerated projected gradient.
QpResult solve_box_qp(const std::vector<std::vector<double>>& Q, double C, std::size_t max_iter = 200000,
                      double tol = 1e-10);

// Q for pairwise RBF ranking: <phi(p_k) - phi(n_k), phi(p_m) - phi(n_m)>.
std::vector<std::vector<double>> pairwise_rbf_gram(const std::vector<std::vector<double>>& positives,
                                                   const std::vector<std::vector<double>>& negatives, double gamma);

double rbf(const std::vector<double>& u, const std::vector<double>& v, double gamma);

}  // namespace oracle
