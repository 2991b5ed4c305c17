#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

double average_precision(const std::vector<std::string>& ranked, const std::set<std::string>& relevant) {
    double total = 0.0;
    for (const auto& rel : relevant) {
        auto it = std::find(ranked.begin(), ranked.end(), rel);
        if (it == ranked.end()) continue;
        auto pos = static_cast<std::size_t>(it - ranked.begin());
        std::size_t count = 0;
        for (std::size_t i = 0; i <= pos; ++i) count += relevant.count(ranked[i]);
        total += static_cast<double>(count) / static_cast<double>(pos + 1);
    }
    return total / static_cast<double>(relevant.size());
}

std::vector<double> bm25_scores(const std::vector<std::vector<std::string>>& docs,
                                const std::vector<std::string>& query, double k1, double b) {
    const double n = static_cast<double>(docs.size());
    double avg = 0.0;
    for (const auto& d : docs) avg += static_cast<double>(d.size());
    avg = docs.empty() ? 0.0 : avg / n;
    std::vector<double> scores(docs.size(), 0.0);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        for (const auto& term : query) {
            double tf = static_cast<double>(std::count(docs[i].begin(), docs[i].end(), term));
            if (tf == 0.0) continue;
            double df = 0.0;
            for (const auto& d : docs) df += std::find(d.begin(), d.end(), term) != d.end() ? 1.0 : 0.0;
            double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
            double len_ratio = avg > 0.0 ? static_cast<double>(docs[i].size()) / avg : 0.0;
            scores[i] += idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * len_ratio));
        }
    }
    return scores;
}

std::vector<double> reciprocal_ranks(const std::vector<std::string>& ids, const std::vector<double>& values) {
    std::vector<double> rr(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        std::size_t better = 0;
        for (std::size_t j = 0; j < ids.size(); ++j) {
            if (j == i) continue;
            if (values[j] > values[i] || (values[j] == values[i] && ids[j] < ids[i])) ++better;
        }
        rr[i] = 1.0 / static_cast<double>(better + 1);
    }
    return rr;
}

double rbf(const std::vector<double>& u, const std::vector<double>& v, double gamma) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
    return std::exp(-gamma * s);
}

std::vector<std::vector<double>> pairwise_rbf_gram(const std::vector<std::vector<double>>& pos,
                                                   const std::vector<std::vector<double>>& neg, double gamma) {
    const std::size_t n = pos.size();
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
            q[k][m] = rbf(pos[k], pos[m], gamma) - rbf(pos[k], neg[m], gamma) - rbf(neg[k], pos[m], gamma) +
                      rbf(neg[k], neg[m], gamma);
    return q;
}

QpResult solve_box_qp(const std::vector<std::vector<double>>& Q, double C, std::size_t max_iter, double tol) {
    const std::size_t n = Q.size();
    double lipschitz = 0.0;
    for (const auto& row : Q) {
        double s = 0.0;
        for (double v : row) s += std::abs(v);
        lipschitz = std::max(lipschitz, s);
    }
    const double step = lipschitz > 0.0 ? 1.0 / lipschitz : 1.0;
    auto gradient = [&](const std::vector<double>& a) {
        std::vector<double> g(n, -1.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g[i] += Q[i][j] * a[j];
        return g;
    };
    auto objective = [&](const std::vector<double>& a) {
        double lin = 0.0, quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            lin += a[i];
            for (std::size_t j = 0; j < n; ++j) quad += a[i] * Q[i][j] * a[j];
        }
        return lin - 0.5 * quad;
    };

    std::vector<double> x(n, 0.0), y = x, x_prev = x;
    double t = 1.0;
    QpResult res;
    for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
        auto g = gradient(y);
        x_prev = x;
        for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(y[i] - step * g[i], 0.0, C);
        // Restart momentum when the objective gets worse.
        if (objective(x) < objective(x_prev)) {
            t = 1.0;
            y = x_prev;
            continue;
        }
        double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            change = std::max(change, std::abs(x[i] - x_prev[i]));
            y[i] = x[i] + ((t - 1.0) / t_next) * (x[i] - x_prev[i]);
        }
        t = t_next;
        if (change < tol && res.iterations > 10) break;
    }
    res.alpha = x;
    res.objective = objective(x);
    return res;
}

}  // namespace oracle
