#include "claimrank/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <list>
#include <map>
#include <memory>
#include <numeric>
#include <unordered_map>

#include "claimrank/error.hpp"

namespace claimrank {

json TrainConfig::to_json() const {
    json j{{"C", C},
           {"epsilon_tol", epsilon_tol},
           {"max_pairs_per_query", max_pairs_per_query},
           {"seed", seed},
           {"cache_mb", cache_mb},
           {"kernel_degree", kernel_degree}};
    j["gamma"] = gamma ? json(*gamma) : json("auto");
    j["max_iterations"] = max_iterations ? json(*max_iterations) : json(nullptr);
    return j;
}

TrainConfig TrainConfig::from_json(const json& j) {
    TrainConfig c;
    c.C = j.value("C", 1.0);
    if (!(c.C > 0.0)) throw Error("ranker C must be positive");
    if (j.contains("gamma") && !(j.at("gamma").is_string() && j.at("gamma") == "auto")) {
        if (!j.at("gamma").is_number() || !(j.at("gamma").get<double>() > 0.0))
            throw Error("ranker gamma must be \"auto\" or a positive number");
        c.gamma = j.at("gamma").get<double>();
    }
    c.epsilon_tol = j.value("epsilon_tol", 1e-3);
    if (!(c.epsilon_tol > 0.0)) throw Error("ranker epsilon_tol must be positive");
    c.max_pairs_per_query = j.value("max_pairs_per_query", std::size_t{500});
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("max_iterations") && !j.at("max_iterations").is_null())
        c.max_iterations = j.at("max_iterations").get<std::size_t>();
    c.cache_mb = j.value("cache_mb", std::size_t{256});
    c.kernel_degree = j.value("kernel_degree", 3);
    return c;
}

std::vector<PairConstraint> build_constraints(const std::vector<QueryPool>& pools, const TrainConfig& config,
                                              ConstraintReport* report) {
    ConstraintReport local;
    std::vector<PairConstraint> out;
    for (const auto& pool : pools) {
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < pool.candidates.size(); ++i)
            (pool.relevant.count(pool.candidates[i].ver_claim_id) ? pos : neg).push_back(i);
        if (pos.empty()) {
            ++local.queries_without_positive;
            std::cerr << "warning: query " << pool.query_id << " has no relevant candidate; skipped\n";
            continue;
        }
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (auto p : pos)
            for (auto n : neg) pairs.emplace_back(p, n);
        if (pairs.size() > config.max_pairs_per_query) {
            ++local.subsampled_queries;
            Rng rng(config.seed ^ fnv1a64(pool.query_id));
            std::vector<std::size_t> order(pairs.size());
            std::iota(order.begin(), order.end(), 0);
            rng.shuffle(order);
            order.resize(config.max_pairs_per_query);
            std::sort(order.begin(), order.end());
            std::vector<std::pair<std::size_t, std::size_t>> kept;
            kept.reserve(order.size());
            for (auto i : order) kept.push_back(pairs[i]);
            pairs = std::move(kept);
        }
        for (auto [p, n] : pairs)
            out.push_back({pool.query_id, pool.candidates[p].vector, pool.candidates[n].vector});
    }
    if (report) *report = local;
    return out;
}

double rbf_kernel(const FeatureVector& u, const FeatureVector& v, double gamma) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        double d = u[i] - v[i];
        d2 += d * d;
    }
    return std::exp(-gamma * d2);
}

namespace {

// Rows of the item kernel matrix K(x_i, x_j), least-recently-used eviction.
class KernelRowCache {
public:
    KernelRowCache(const std::vector<FeatureVector>& items, double gamma, std::size_t cache_mb)
        : items_(items), gamma_(gamma) {
        std::size_t row_bytes = std::max<std::size_t>(1, items.size()) * sizeof(double);
        capacity_ = std::max<std::size_t>(4, cache_mb * 1024 * 1024 / row_bytes);
    }

    std::shared_ptr<const std::vector<double>> row(std::size_t i) {
        auto it = rows_.find(i);
        if (it != rows_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second.second);
            return it->second.first;
        }
        auto r = std::make_shared<std::vector<double>>(items_.size());
        for (std::size_t j = 0; j < items_.size(); ++j) (*r)[j] = i == j ? 1.0 : rbf_kernel(items_[i], items_[j], gamma_);
        if (rows_.size() >= capacity_) {
            rows_.erase(lru_.back());
            lru_.pop_back();
        }
        lru_.push_front(i);
        rows_.emplace(i, std::make_pair(r, lru_.begin()));
        return r;
    }

private:
    const std::vector<FeatureVector>& items_;
    double gamma_;
    std::size_t capacity_;
    std::list<std::size_t> lru_;
    std::unordered_map<std::size_t, std::pair<std::shared_ptr<const std::vector<double>>, std::list<std::size_t>::iterator>>
        rows_;
};

struct Step {
    double dx = 0.0;
    double dy = 0.0;
};

double clamp_or(double value, double lo, double hi) { return std::clamp(value, lo, hi); }

// argmin over t in [lo, hi] of 1/2 q t^2 + g t.
double minimize_1d(double q, double g, double lo, double hi) {
    if (q > 1e-12) return clamp_or(-g / q, lo, hi);
    if (g > 0.0) return lo;
    if (g < 0.0) return hi;
    return clamp_or(0.0, lo, hi);
}

// argmin of 1/2 (a x^2 + 2 c x y + b y^2) + gx x + gy y over a box holding 0.
Step minimize_2d(double a, double b, double c, double gx, double gy, double lx, double hx, double ly, double hy) {
    auto value = [&](double x, double y) { return 0.5 * (a * x * x + 2.0 * c * x * y + b * y * y) + gx * x + gy * y; };
    const double det = a * b - c * c;
    if (det > 1e-12 * std::max(1.0, a * b)) {
        double x = (-gx * b + gy * c) / det;
        double y = (-gy * a + gx * c) / det;
        if (x >= lx && x <= hx && y >= ly && y <= hy) return {x, y};
    }
    Step best{0.0, 0.0};
    double best_value = 0.0;
    auto consider = [&](double x, double y) {
        double v = value(x, y);
        if (v < best_value) {
            best_value = v;
            best = {x, y};
        }
    };
    for (double x : {lx, hx}) consider(x, minimize_1d(b, c * x + gy, ly, hy));
    for (double y : {ly, hy}) consider(minimize_1d(a, c * y + gx, lx, hx), y);
    return best;
}

}  // namespace

RankSVMModel train(const std::vector<PairConstraint>& constraints, const TrainConfig& config) {
    if (constraints.empty()) throw Error("train: no constraints");
    if (!(config.C > 0.0)) throw Error("train: C must be positive");
    const std::size_t dim = constraints.front().positive.size();
    if (dim == 0) throw Error("train: zero-dimensional features");

    std::map<FeatureVector, std::size_t> item_index;
    std::vector<FeatureVector> items;
    auto intern = [&](const FeatureVector& v) {
        if (v.size() != dim)
            throw Error("train: dimension mismatch (" + std::to_string(v.size()) + " vs " + std::to_string(dim) + ")");
        for (double x : v)
            if (!std::isfinite(x)) throw Error("train: non-finite feature value");
        auto [it, inserted] = item_index.emplace(v, items.size());
        if (inserted) items.push_back(v);
        return it->second;
    };
    const std::size_t n = constraints.size();
    std::vector<std::size_t> pos(n), neg(n);
    for (std::size_t k = 0; k < n; ++k) {
        pos[k] = intern(constraints[k].positive);
        neg[k] = intern(constraints[k].negative);
    }

    RankSVMModel model;
    model.dim = dim;
    model.gamma = config.gamma.value_or(1.0 / static_cast<double>(dim));
    model.C = config.C;
    model.kernel_degree = config.kernel_degree;
    model.stats.constraints = n;

    {
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
        for (std::size_t k = 0; k < n; ++k) ++seen[{pos[k], neg[k]}];
        std::size_t contradictory = 0;
        for (const auto& [key, count] : seen) {
            if (key.first == key.second) contradictory += count;
            else if (key.first < key.second && seen.count({key.second, key.first})) ++contradictory;
        }
        model.stats.contradictory_pairs = contradictory;
        if (contradictory)
            std::cerr << "warning: " << contradictory << " contradictory training constraint(s)\n";
    }

    KernelRowCache cache(items, model.gamma, config.cache_mb);
    auto q_row = [&](std::size_t k) {
        auto kp = cache.row(pos[k]);
        auto kn = cache.row(neg[k]);
        std::vector<double> r(n);
        for (std::size_t m = 0; m < n; ++m) r[m] = (*kp)[pos[m]] - (*kp)[neg[m]] - (*kn)[pos[m]] + (*kn)[neg[m]];
        return r;
    };

    const double C = config.C;
    const std::size_t max_iter = config.max_iterations.value_or(std::max<std::size_t>(10 * n, 10000));
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // Q alpha - 1
    auto violation = [&](std::size_t k) {
        if (grad[k] < 0.0 && alpha[k] < C) return -grad[k];
        if (grad[k] > 0.0 && alpha[k] > 0.0) return grad[k];
        return 0.0;
    };

    std::size_t iter = 0;
    double max_violation = 0.0;
    bool converged = false;
    for (;; ++iter) {
        std::size_t i = n, j = n;
        double vi = 0.0, vj = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            double v = violation(k);
            if (v > vi) {
                j = i;
                vj = vi;
                i = k;
                vi = v;
            } else if (v > vj) {
                j = k;
                vj = v;
            }
        }
        max_violation = vi;
        if (vi <= config.epsilon_tol) {
            converged = true;
            break;
        }
        if (iter >= max_iter) break;

        auto row_i = q_row(i);
        double di = 0.0, dj = 0.0;
        std::vector<double> row_j;
        if (j == n) {
            di = minimize_1d(row_i[i], grad[i], -alpha[i], C - alpha[i]);
        } else {
            row_j = q_row(j);
            auto step = minimize_2d(row_i[i], row_j[j], row_i[j], grad[i], grad[j], -alpha[i], C - alpha[i],
                                    -alpha[j], C - alpha[j]);
            di = step.dx;
            dj = step.dy;
        }
        if (di == 0.0 && dj == 0.0) break;
        alpha[i] = std::clamp(alpha[i] + di, 0.0, C);
        for (std::size_t m = 0; m < n; ++m) grad[m] += row_i[m] * di;
        if (j != n && dj != 0.0) {
            alpha[j] = std::clamp(alpha[j] + dj, 0.0, C);
            for (std::size_t m = 0; m < n; ++m) grad[m] += row_j[m] * dj;
        }
    }
    if (!converged)
        std::cerr << "warning: SMO stopped after " << iter << " iterations with KKT violation " << max_violation
                  << "\n";

    double objective = 0.0;
    for (std::size_t k = 0; k < n; ++k) objective += 0.5 * alpha[k] * (1.0 - grad[k]);
    model.stats.iterations = iter;
    model.stats.converged = converged;
    model.stats.max_violation = max_violation;
    model.stats.dual_objective = objective;

    for (std::size_t k = 0; k < n; ++k)
        if (alpha[k] > 0.0) model.supports.push_back({items[pos[k]], items[neg[k]], alpha[k]});
    return model;
}

double RankSVMModel::decision(const FeatureVector& x) const {
    if (supports.empty()) return 0.0;
    if (x.size() != dim)
        throw Error("decision: vector has dimension " + std::to_string(x.size()) + ", model expects " +
                    std::to_string(dim));
    double total = 0.0;
    for (const auto& s : supports) total += s.alpha * (rbf_kernel(s.positive, x, gamma) - rbf_kernel(s.negative, x, gamma));
    return total;
}

double RankSVMModel::preference(const FeatureVector& a, const FeatureVector& b) const {
    return decision(a) - decision(b);
}

std::string RankSVMModel::serialize() const {
    json j;
    j["format"] = "claimrank-ranksvm";
    j["version"] = 1;
    j["kernel"] = "rbf";
    j["gamma"] = gamma;
    j["C"] = C;
    j["kernel_degree"] = kernel_degree;
    j["bias"] = 0.0;
    j["dim"] = dim;
    j["feature_config_hash"] = feature_config_hash;
    j["feature_config"] = feature_config;
    j["scaler"] = scaler.to_json();
    j["training"] = {{"constraints", stats.constraints},
                     {"iterations", stats.iterations},
                     {"converged", stats.converged},
                     {"max_violation", stats.max_violation},
                     {"dual_objective", stats.dual_objective},
                     {"contradictory_pairs", stats.contradictory_pairs}};
    json sv = json::array();
    for (const auto& s : supports) sv.push_back({{"alpha", s.alpha}, {"positive", s.positive}, {"negative", s.negative}});
    j["supports"] = std::move(sv);
    return j.dump(1) + "\n";
}

RankSVMModel RankSVMModel::deserialize(const std::string& text) {
    RankSVMModel m;
    try {
        auto j = json::parse(text);
        if (j.at("format") != "claimrank-ranksvm") throw Error("not a claimrank model file");
        if (j.at("version") != 1) throw Error("unsupported model version");
        m.gamma = j.at("gamma").get<double>();
        m.C = j.at("C").get<double>();
        m.kernel_degree = j.at("kernel_degree").get<int>();
        m.dim = j.at("dim").get<std::size_t>();
        m.feature_config_hash = j.at("feature_config_hash").get<std::string>();
        m.feature_config = j.at("feature_config");
        m.scaler = ScalerParams::from_json(j.at("scaler"));
        const auto& t = j.at("training");
        m.stats.constraints = t.at("constraints").get<std::size_t>();
        m.stats.iterations = t.at("iterations").get<std::size_t>();
        m.stats.converged = t.at("converged").get<bool>();
        m.stats.max_violation = t.at("max_violation").get<double>();
        m.stats.dual_objective = t.at("dual_objective").get<double>();
        m.stats.contradictory_pairs = t.at("contradictory_pairs").get<std::size_t>();
        for (const auto& s : j.at("supports")) {
            Support sup{s.at("positive").get<FeatureVector>(), s.at("negative").get<FeatureVector>(),
                        s.at("alpha").get<double>()};
            if (sup.positive.size() != m.dim || sup.negative.size() != m.dim)
                throw Error("model support vector dimension mismatch");
            if (sup.alpha < 0.0 || sup.alpha > m.C) throw Error("model multiplier outside [0, C]");
            m.supports.push_back(std::move(sup));
        }
    } catch (const json::exception& e) {
        throw Error(std::string("malformed model file: ") + e.what());
    }
    return m;
}

void RankSVMModel::save(const std::string& path) const { write_file(path, serialize()); }

RankSVMModel RankSVMModel::load(const std::string& path) { return deserialize(read_file(path)); }

std::vector<RankedCandidate> rerank(const RankSVMModel& model, const std::vector<CandidateFeatures>& candidates,
                                    const std::string& feature_config_hash) {
    if (feature_config_hash != model.feature_config_hash)
        throw Error("feature configuration " + feature_config_hash + " does not match model configuration " +
                    model.feature_config_hash);
    std::vector<RankedCandidate> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) out.push_back({c.ver_claim_id, model.decision(c.vector)});
    std::sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.ver_claim_id < b.ver_claim_id;
    });
    return out;
}

}  // namespace claimrank
