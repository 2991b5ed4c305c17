#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "claimrank/features.hpp"

namespace claimrank {

struct TrainConfig {
    double C = 1.0;
    std::optional<double> gamma;  // nullopt: 1 / num_features
    double epsilon_tol = 1e-3;
    std::size_t max_pairs_per_query = 500;
    std::uint64_t seed = 0;
    std::optional<std::size_t> max_iterations;  // default max(10 * constraints, 10000)
    std::size_t cache_mb = 256;
    int kernel_degree = 3;  // recorded only; unused by the RBF kernel

    json to_json() const;
    static TrainConfig from_json(const json& j);
};

struct CandidateFeatures {
    std::string ver_claim_id;
    FeatureVector vector;
};

struct QueryPool {
    std::string query_id;
    std::vector<CandidateFeatures> candidates;
    std::set<std::string> relevant;
};

// positive must rank above negative.
struct PairConstraint {
    std::string query_id;
    FeatureVector positive;
    FeatureVector negative;
};

struct ConstraintReport {
    std::size_t queries_without_positive = 0;
    std::size_t subsampled_queries = 0;
};

// Every relevant candidate against every non-relevant one, per query, capped
// at max_pairs_per_query by a seeded subsample.
std::vector<PairConstraint> build_constraints(const std::vector<QueryPool>& pools, const TrainConfig& config,
                                              ConstraintReport* report = nullptr);

struct TrainingStats {
    std::size_t constraints = 0;
    std::size_t iterations = 0;
    bool converged = false;
    double max_violation = 0.0;
    double dual_objective = 0.0;
    std::size_t contradictory_pairs = 0;
};

// Pairwise RBF-kernel ranking SVM. The learned scorer is
//   f(x) = sum_k alpha_k (K(p_k, x) - K(n_k, x)),  K(u, v) = exp(-gamma |u - v|^2),
// i.e. a linear ranker over kernel-space differences phi(p_k) - phi(n_k).
// The bias is fixed at 0.
class RankSVMModel {
public:
    struct Support {
        FeatureVector positive;
        FeatureVector negative;
        double alpha = 0.0;
    };

    std::size_t dim = 0;
    double gamma = 0.0;
    double C = 1.0;
    int kernel_degree = 3;
    std::string feature_config_hash;
    json feature_config;
    ScalerParams scaler;
    std::vector<Support> supports;
    TrainingStats stats;

    double decision(const FeatureVector& x) const;
    // decision(a) - decision(b): the learned preference of a over b.
    double preference(const FeatureVector& a, const FeatureVector& b) const;

    std::string serialize() const;
    static RankSVMModel deserialize(const std::string& text);
    void save(const std::string& path) const;
    static RankSVMModel load(const std::string& path);
};

double rbf_kernel(const FeatureVector& u, const FeatureVector& v, double gamma);

// Solves  max_a  sum(a) - 1/2 a^T Q a,  0 <= a <= C,  with
// Q_km = <phi(p_k) - phi(n_k), phi(p_m) - phi(n_m)>, by SMO on the maximal
// KKT-violating pair.
RankSVMModel train(const std::vector<PairConstraint>& constraints, const TrainConfig& config);

struct RankedCandidate {
    std::string ver_claim_id;
    double score = 0.0;
};

// Sorted by decision descending, ties by ascending ver_claim_id. Throws when
// feature_config_hash differs from the model's.
std::vector<RankedCandidate> rerank(const RankSVMModel& model, const std::vector<CandidateFeatures>& candidates,
                                    const std::string& feature_config_hash);

}  // namespace claimrank
