#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include "claimrank/error.hpp"
#include "claimrank/pipeline.hpp"
#include "support/synthetic.hpp"

using namespace claimrank;

namespace {

struct CliResult {
    int code = -1;
    std::string output;
};

CliResult cli(const std::string& args) {
    std::string cmd = std::string(CLAIMRANK_CLI_PATH) + " " + args + " 2>&1";
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string kFixtures = CLAIMRANK_FIXTURE_DIR;

}  // namespace

TEST_CASE("config loading resolves relative paths and seeds") {
    auto dir = synth::temp_dir("cfg");
    auto paths = synth::write_suite(synth::baseline_suite(1, 30, 6), dir);
    auto cfg = ExperimentConfig::load(paths.config);
    CHECK(cfg.claims_path == dir + "/claims.jsonl");
    CHECK(cfg.split.seed == 7);
    cfg.set_seed(3);
    CHECK(cfg.split.seed == 3);
    CHECK(cfg.ranker.seed == 3);
    auto round = ExperimentConfig::from_json(cfg.to_json(), "/");
    CHECK(round.hash() == cfg.hash());
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"split", {{"kind", "weird"}}}}, "."), Error);
}

TEST_CASE("stages refuse to run without upstream artifacts") {
    auto dir = synth::temp_dir("stage_deps");
    auto paths = synth::write_suite(synth::baseline_suite(2, 30, 6), dir);
    auto cfg = ExperimentConfig::load(paths.config);
    CHECK_THROWS_WITH_AS(stage_train(cfg), doctest::Contains("featurize"), Error);
    CHECK_THROWS_WITH_AS(stage_retrieve(cfg), doctest::Contains("index"), Error);
}

TEST_CASE("pipeline on a small suite and feature-hash checks") {
    auto dir = synth::temp_dir("pipe_small");
    auto paths = synth::write_suite(synth::baseline_suite(3, 60, 12), dir);
    auto cfg = ExperimentConfig::load(paths.config);
    auto report = run_pipeline(cfg);
    CHECK(report.query_count > 0);
    CHECK(report.map_overall > 0.5);
    for (const char* f : {artifacts::kIndex, artifacts::kSplit, artifacts::kCandidates, artifacts::kFeatures,
                          artifacts::kModel, artifacts::kRun, artifacts::kReportJson})
        CHECK(file_exists(cfg.output_dir + "/" + f));
    CHECK(file_exists(cfg.output_dir + "/provenance/train.json"));

    auto changed = cfg;
    changed.features.fc = FCConfig{1, 1};
    CHECK_THROWS_WITH_AS(stage_train(changed), doctest::Contains("featurize"), Error);

    stage_export_xh_graphs(cfg);
    CHECK(file_exists(cfg.output_dir + "/" + artifacts::kXhGraphs));
}

TEST_CASE("rerunning stages reproduces byte-identical outputs") {
    auto dir = synth::temp_dir("idempotent");
    auto paths = synth::write_suite(synth::baseline_suite(6, 60, 12), dir);
    auto cfg = ExperimentConfig::load(paths.config);
    run_pipeline(cfg);
    std::map<std::string, std::string> first;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(cfg.output_dir))
        if (entry.is_regular_file()) first[entry.path().string()] = read_file(entry.path().string());
    run_pipeline(cfg);
    for (const auto& [path, bytes] : first) {
        INFO(path);
        CHECK(read_file(path) == bytes);
    }
}

TEST_CASE("cli evaluate on a hand-written run") {
    auto r = cli("evaluate --run " + kFixtures + "/run.txt --qrels " + kFixtures + "/qrels.txt");
    CHECK(r.code == 0);
    CHECK(r.output.find("MAP") != std::string::npos);
    CHECK(r.output.find("0.75") != std::string::npos);

    auto missing = cli("evaluate --run /nonexistent/run.txt --qrels " + kFixtures + "/qrels.txt");
    CHECK(missing.code == 1);
}

TEST_CASE("cli train without featurize names the missing stage") {
    auto dir = synth::temp_dir("cli_deps");
    auto paths = synth::write_suite(synth::baseline_suite(4, 30, 6), dir);
    auto r = cli("--config " + paths.config + " train");
    CHECK(r.code == 1);
    CHECK(r.output.find("featurize") != std::string::npos);
    CHECK(cli("--bogus-flag").code != 0);
}

TEST_CASE("cli stages run end to end") {
    auto dir = synth::temp_dir("cli_stages");
    auto paths = synth::write_suite(synth::baseline_suite(5, 60, 12), dir);
    for (const char* stage : {"index", "split", "retrieve", "featurize", "train", "rerank", "evaluate",
                              "export-xh-graphs"}) {
        auto r = cli("--config " + paths.config + " " + stage);
        INFO(stage << ": " << r.output);
        CHECK(r.code == 0);
    }
}
