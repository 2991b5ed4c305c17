// claimrank: command-line driver for the retrieval / reranking pipeline.
//
// Exit codes: 0 success, 1 user error (bad config or inputs, missing
// upstream artifact), 2 internal error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "claimrank/error.hpp"
#include "claimrank/eval.hpp"
#include "claimrank/pipeline.hpp"

using namespace claimrank;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
};

ExperimentConfig load_config(const GlobalOptions& opts) {
    if (opts.config_path.empty()) throw Error("--config is required for this subcommand");
    auto cfg = ExperimentConfig::load(opts.config_path);
    if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
    if (opts.seed) cfg.set_seed(*opts.seed);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Retrieve and rerank previously fact-checked claims"};
    app.require_subcommand(1);
    GlobalOptions opts;
    app.add_option("--config", opts.config_path, "Experiment configuration (JSON)");
    app.add_option("--out", opts.out_dir, "Output directory (overrides output_dir in the config)");
    app.add_option("--seed", opts.seed, "Seed for every randomized step (overrides the config)");

    auto* index = app.add_subcommand("index", "Build the BM25 index over verified claims");
    auto* split_cmd = app.add_subcommand("split", "Partition annotated pairs into train and test");
    auto* retrieve = app.add_subcommand("retrieve", "Retrieve BM25 candidates for every query");
    auto* featurize = app.add_subcommand("featurize", "Compute scaled pair feature vectors");
    auto* train_cmd = app.add_subcommand("train", "Train the pairwise RBF rankSVM");
    auto* rerank_cmd = app.add_subcommand("rerank", "Rerank test candidates with the trained model");
    auto* evaluate_cmd = app.add_subcommand("evaluate", "Compute MAP overall and per category");
    std::string run_path, qrels_path;
    bool print_json = false;
    evaluate_cmd->add_option("--run", run_path, "Run file (defaults to the pipeline's run.txt)");
    evaluate_cmd->add_option("--qrels", qrels_path, "Qrels file (defaults to the pipeline's qrels_test.txt)");
    evaluate_cmd->add_flag("--json", print_json, "Print the JSON report instead of the table");
    auto* export_xh = app.add_subcommand("export-xh-graphs", "Write evidence graphs for an external scorer");
    auto* matrix = app.add_subcommand("run-matrix", "Run all nine ablation configurations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*evaluate_cmd && !run_path.empty() && !qrels_path.empty()) {
            auto run = read_run(run_path);
            auto qrels = read_qrels(qrels_path);
            auto report = evaluate(run, qrels);
            std::cout << (print_json ? report.to_json().dump(1) + "\n" : report.to_table());
            std::cout << "MRR " << format_double(mean_reciprocal_rank(run, qrels)) << "\n";
            return 0;
        }
        auto cfg = load_config(opts);
        if (*index) stage_index(cfg);
        else if (*split_cmd) stage_split(cfg);
        else if (*retrieve) stage_retrieve(cfg);
        else if (*featurize) stage_featurize(cfg);
        else if (*train_cmd) stage_train(cfg);
        else if (*rerank_cmd) stage_rerank(cfg);
        else if (*evaluate_cmd) {
            auto report = stage_evaluate(cfg);
            std::cout << (print_json ? report.to_json().dump(1) + "\n" : report.to_table());
        } else if (*export_xh) stage_export_xh_graphs(cfg);
        else if (*matrix) std::cout << matrix_table(run_matrix(cfg));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
