#pragma once

#include <optional>
#include <string>
#include <vector>

#include "claimrank/bm25.hpp"
#include "claimrank/corpus.hpp"
#include "claimrank/eval.hpp"
#include "claimrank/features.hpp"
#include "claimrank/ranker.hpp"
#include "claimrank/textproc.hpp"

namespace claimrank {

struct ExperimentConfig {
    std::string name = "experiment";
    std::string claims_path;
    std::string transcripts_path;
    std::string pairs_path;
    SplitSpec split;
    TokenizerConfig tokenizer;
    BM25Params bm25;
    std::size_t retrieve_k = 100;
    Field retrieve_field = Field::combined;
    json embedding = json{{"kind", "hashed"}, {"dim", 256}};
    std::optional<std::string> source_coref_path;
    std::optional<std::string> target_coref_path;
    std::optional<std::string> global_scores_path;
    FeatureConfig features;
    TrainConfig ranker;
    FCConfig matrix_fc{3, 1};
    std::string output_dir = "out";

    // Relative paths in the document are resolved against base_dir.
    static ExperimentConfig from_json(const json& j, const std::string& base_dir = ".");
    static ExperimentConfig load(const std::string& path);
    json to_json() const;
    std::string hash() const;

    // Overrides every seed in the configuration.
    void set_seed(std::uint64_t seed);
};

// Artifact file names inside the output directory.
namespace artifacts {
inline constexpr const char* kIndex = "index.bin";
inline constexpr const char* kSplit = "split.json";
inline constexpr const char* kCandidates = "candidates.jsonl";
inline constexpr const char* kTrainQrels = "qrels_train.txt";
inline constexpr const char* kTestQrels = "qrels_test.txt";
inline constexpr const char* kFeatures = "features.jsonl";
inline constexpr const char* kScaler = "scaler.json";
inline constexpr const char* kModel = "model.json";
inline constexpr const char* kRun = "run.txt";
inline constexpr const char* kReportJson = "report.json";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kXhGraphs = "xh_graphs.jsonl";
inline constexpr const char* kMatrixJson = "matrix_report.json";
inline constexpr const char* kMatrixText = "matrix_report.txt";
}  // namespace artifacts

void stage_index(const ExperimentConfig& cfg);
void stage_split(const ExperimentConfig& cfg);
void stage_retrieve(const ExperimentConfig& cfg);
void stage_featurize(const ExperimentConfig& cfg);
void stage_train(const ExperimentConfig& cfg);
void stage_rerank(const ExperimentConfig& cfg);
EvalReport stage_evaluate(const ExperimentConfig& cfg);
void stage_export_xh_graphs(const ExperimentConfig& cfg);

// index -> split -> retrieve -> featurize -> train -> rerank -> evaluate.
EvalReport run_pipeline(const ExperimentConfig& cfg);

struct MatrixVariant {
    std::string name;
    bool source_coref = false;
    bool target_coref = false;
    bool fc = false;
    bool global = false;
};

// The nine ablation rows: baseline, FC, src-coref, src-coref+FC, XH,
// tgt-coref, tgt-coref+XH, src+tgt coref, All.
std::vector<MatrixVariant> matrix_variants();
ExperimentConfig variant_config(const ExperimentConfig& base, const MatrixVariant& v);

struct MatrixRow {
    std::string name;
    EvalReport report;
};

// Runs every variant under <output_dir>/<variant>/ and writes the
// consolidated report files into output_dir.
std::vector<MatrixRow> run_matrix(const ExperimentConfig& cfg);
std::string matrix_table(const std::vector<MatrixRow>& rows);
json matrix_json(const std::vector<MatrixRow>& rows);

}  // namespace claimrank
