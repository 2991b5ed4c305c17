#include "claimrank/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include "claimrank/context.hpp"
#include "claimrank/embed.hpp"
#include "claimrank/error.hpp"

namespace claimrank {

namespace fs = std::filesystem;

namespace {

std::string resolve_path(const std::string& p, const std::string& base_dir) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (fs::path(base_dir) / p).lexically_normal().string();
}

std::optional<std::string> optional_path(const json& j, const char* key, const std::string& base_dir) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return resolve_path(j.at(key).get<std::string>(), base_dir);
}

json optional_to_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

std::string out_path(const ExperimentConfig& cfg, const char* name) {
    return (fs::path(cfg.output_dir) / name).string();
}

std::string require_artifact(const ExperimentConfig& cfg, const char* name, const char* stage) {
    auto path = out_path(cfg, name);
    if (!file_exists(path))
        throw Error("missing " + path + "; run the '" + std::string(stage) + "' stage first");
    return path;
}

void write_provenance(const ExperimentConfig& cfg, const std::string& stage, const std::vector<std::string>& inputs,
                      const std::vector<std::string>& outputs) {
    json j;
    j["stage"] = stage;
    j["config"] = cfg.to_json();
    j["config_hash"] = cfg.hash();
    for (const auto& p : inputs) j["inputs"][p] = file_hash(p);
    for (const auto& p : outputs) j["outputs"][fs::path(p).filename().string()] = file_hash(p);
    write_file((fs::path(cfg.output_dir) / "provenance" / (stage + ".json")).string(), j.dump(1) + "\n");
}

std::vector<std::string> corpus_inputs(const ExperimentConfig& cfg) {
    std::vector<std::string> in{cfg.claims_path, cfg.transcripts_path, cfg.pairs_path};
    if (cfg.source_coref_path) in.push_back(*cfg.source_coref_path);
    if (cfg.target_coref_path) in.push_back(*cfg.target_coref_path);
    return in;
}

// Corpus with the configured co-reference resolutions applied.
struct ResolvedCorpus {
    DatasetBundle bundle;
    std::vector<VerifiedClaim> claims;
    std::map<std::string, Transcript> transcripts;

    const Transcript& transcript(const std::string& debate_id) const { return transcripts.at(debate_id); }

    std::string query_text(const ClaimPair& pair) const {
        const auto& t = transcript(pair.debate_id);
        std::string text;
        for (auto l : pair.line_nos) {
            if (!text.empty()) text += ' ';
            text += t.sentences[*t.position_of(l)].text;
        }
        return text;
    }
};

ResolvedCorpus load_resolved(const ExperimentConfig& cfg) {
    ResolvedCorpus rc;
    rc.bundle = load_corpus(cfg.claims_path, cfg.transcripts_path, cfg.pairs_path);
    CorefResolutionSet source(CorefSide::source);
    CorefResolutionSet target(CorefSide::target);
    if (cfg.source_coref_path) source = CorefResolutionSet::load(*cfg.source_coref_path, CorefSide::source);
    if (cfg.target_coref_path) target = CorefResolutionSet::load(*cfg.target_coref_path, CorefSide::target);
    for (const auto& c : rc.bundle.claims()) rc.claims.push_back(resolve_claim(c, target));
    for (const auto& t : rc.bundle.transcripts()) rc.transcripts.emplace(t.debate_id, resolve_transcript(t, source));
    return rc;
}

struct Query {
    std::string id;
    std::string side;  // "train" | "test"
    std::string text;
    std::string debate_id;
    std::vector<std::int64_t> line_nos;
    std::set<std::string> relevant;
    Category category = Category::unlabeled;
};

std::vector<Query> build_queries(const ResolvedCorpus& rc, const SplitResult& split) {
    std::vector<Query> out;
    for (const auto& [side, indices] : {std::pair{"train", &split.train}, std::pair{"test", &split.test}}) {
        std::map<std::string, std::size_t> seen;
        for (auto i : *indices) {
            const auto& p = rc.bundle.pairs().at(i);
            auto qid = p.query_id();
            auto [it, inserted] = seen.emplace(qid, out.size());
            if (inserted) out.push_back(Query{qid, side, rc.query_text(p), p.debate_id, p.line_nos, {}, p.category});
            auto& q = out[it->second];
            q.relevant.insert(p.ver_claim_ids.begin(), p.ver_claim_ids.end());
        }
    }
    return out;
}

struct CandidateRecord {
    std::string query_id;
    std::string side;
    std::string query_text;
    std::vector<std::string> ids;
};

std::vector<CandidateRecord> read_candidates(const std::string& path) {
    std::vector<CandidateRecord> out;
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        CandidateRecord r;
        r.query_id = require_string(obj, "query_id", path, line, false);
        r.side = require_string(obj, "split", path, line, false);
        r.query_text = require_string(obj, "query_text", path, line);
        for (const auto& c : obj.at("candidates")) r.ids.push_back(c.at("id").get<std::string>());
        out.push_back(std::move(r));
    });
    return out;
}

struct FeatureRecord {
    std::string query_id;
    std::string side;
    std::string ver_claim_id;
    FeatureVector vector;
};

std::vector<FeatureRecord> read_features(const std::string& path, const std::string& expected_hash) {
    std::vector<FeatureRecord> out;
    for_each_jsonl(path, [&](std::size_t line, const json& obj) {
        auto hash = require_string(obj, "config_hash", path, line);
        if (hash != expected_hash)
            throw Error("config-hash mismatch: " + path + " was built with feature config " + hash +
                        ", current config is " + expected_hash + "; rerun 'featurize'");
        FeatureRecord r;
        r.query_id = require_string(obj, "query_id", path, line, false);
        r.side = require_string(obj, "split", path, line, false);
        r.ver_claim_id = require_string(obj, "ver_claim_id", path, line, false);
        r.vector = obj.at("vector").get<FeatureVector>();
        out.push_back(std::move(r));
    });
    return out;
}

// Groups feature records per query, preserving file order.
std::vector<std::pair<std::string, std::vector<CandidateFeatures>>> group_features(
    const std::vector<FeatureRecord>& records, const std::string& side) {
    std::vector<std::pair<std::string, std::vector<CandidateFeatures>>> out;
    std::map<std::string, std::size_t> index;
    for (const auto& r : records) {
        if (r.side != side) continue;
        auto [it, inserted] = index.emplace(r.query_id, out.size());
        if (inserted) out.push_back({r.query_id, {}});
        out[it->second].second.push_back({r.ver_claim_id, r.vector});
    }
    return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j, const std::string& base_dir) {
    ExperimentConfig c;
    try {
        c.name = j.value("name", c.name);
        const auto& corpus = j.at("corpus");
        c.claims_path = resolve_path(corpus.at("claims").get<std::string>(), base_dir);
        c.transcripts_path = resolve_path(corpus.at("transcripts").get<std::string>(), base_dir);
        c.pairs_path = resolve_path(corpus.at("pairs").get<std::string>(), base_dir);
        if (j.contains("split")) {
            const auto& s = j.at("split");
            c.split.kind = parse_split_kind(s.value("kind", std::string("chrono")));
            c.split.train_ratio = s.value("train_ratio", 0.8);
            c.split.seed = s.value("seed", std::uint64_t{0});
            c.split.chrono_train_debates = s.value("chrono_train_debates", 50);
            c.split.chrono_test_debates = s.value("chrono_test_debates", 20);
        }
        if (j.contains("tokenizer")) {
            auto tok = j.at("tokenizer");
            if (tok.contains("stopwords") && tok.at("stopwords").is_string())
                tok["stopwords"] = resolve_path(tok.at("stopwords").get<std::string>(), base_dir);
            c.tokenizer = TokenizerConfig::from_json(tok);
        }
        if (j.contains("bm25")) {
            c.bm25.k1 = j.at("bm25").value("k1", 1.2);
            c.bm25.b = j.at("bm25").value("b", 0.75);
        }
        if (j.contains("retrieval")) {
            c.retrieve_k = j.at("retrieval").value("k", std::size_t{100});
            c.retrieve_field = parse_field(j.at("retrieval").value("field", std::string("combined")));
            if (c.retrieve_k == 0) throw Error("retrieval.k must be at least 1");
        }
        if (j.contains("embedding")) {
            c.embedding = j.at("embedding");
            if (c.embedding.contains("path"))
                c.embedding["path"] = resolve_path(c.embedding.at("path").get<std::string>(), base_dir);
        }
        if (j.contains("coref")) {
            c.source_coref_path = optional_path(j.at("coref"), "source", base_dir);
            c.target_coref_path = optional_path(j.at("coref"), "target", base_dir);
        }
        c.global_scores_path = optional_path(j, "global_scores", base_dir);
        if (j.contains("features")) c.features = FeatureConfig::from_json(j.at("features"));
        if (j.contains("ranker")) c.ranker = TrainConfig::from_json(j.at("ranker"));
        if (j.contains("matrix") && j.at("matrix").contains("fc")) {
            c.matrix_fc = {j.at("matrix").at("fc").value("k", 3), j.at("matrix").at("fc").value("l", 1)};
            if (c.matrix_fc.k < 0 || c.matrix_fc.l < 0) throw Error("matrix.fc sizes must be non-negative");
        }
        c.output_dir = resolve_path(j.value("output_dir", std::string("out")), base_dir);
    } catch (const json::exception& e) {
        throw Error(std::string("invalid config: ") + e.what());
    }
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw Error("config " + path + " is not valid JSON: " + e.what());
    }
    auto dir = fs::path(path).parent_path().string();
    return from_json(j, dir.empty() ? "." : dir);
}

json ExperimentConfig::to_json() const {
    json j;
    j["name"] = name;
    j["corpus"] = {{"claims", claims_path}, {"transcripts", transcripts_path}, {"pairs", pairs_path}};
    j["split"] = {{"kind", to_string(split.kind)},
                  {"train_ratio", split.train_ratio},
                  {"seed", split.seed},
                  {"chrono_train_debates", split.chrono_train_debates},
                  {"chrono_test_debates", split.chrono_test_debates}};
    j["tokenizer"] = tokenizer.to_json();
    j["bm25"] = {{"k1", bm25.k1}, {"b", bm25.b}};
    j["retrieval"] = {{"k", retrieve_k}, {"field", to_string(retrieve_field)}};
    j["embedding"] = embedding;
    j["coref"] = {{"source", optional_to_json(source_coref_path)}, {"target", optional_to_json(target_coref_path)}};
    j["global_scores"] = optional_to_json(global_scores_path);
    j["features"] = features.to_json();
    j["ranker"] = ranker.to_json();
    j["matrix"] = {{"fc", {{"k", matrix_fc.k}, {"l", matrix_fc.l}}}};
    j["output_dir"] = output_dir;
    return j;
}

std::string ExperimentConfig::hash() const { return json_hash(to_json()); }

void ExperimentConfig::set_seed(std::uint64_t seed) {
    split.seed = seed;
    ranker.seed = seed;
}

void stage_index(const ExperimentConfig& cfg) {
    auto rc = load_resolved(cfg);
    auto index = InvertedIndex::build(rc.claims, cfg.tokenizer, cfg.bm25);
    auto path = out_path(cfg, artifacts::kIndex);
    index.save(path);
    write_provenance(cfg, "index", corpus_inputs(cfg), {path});
}

void stage_split(const ExperimentConfig& cfg) {
    auto bundle = load_corpus(cfg.claims_path, cfg.transcripts_path, cfg.pairs_path);
    auto s = split(bundle, cfg.split);
    auto path = out_path(cfg, artifacts::kSplit);
    write_file(path, split_to_json(s).dump() + "\n");
    write_provenance(cfg, "split", {cfg.claims_path, cfg.transcripts_path, cfg.pairs_path}, {path});
}

void stage_retrieve(const ExperimentConfig& cfg) {
    auto index_path = require_artifact(cfg, artifacts::kIndex, "index");
    auto split_path = require_artifact(cfg, artifacts::kSplit, "split");
    auto rc = load_resolved(cfg);
    auto index = InvertedIndex::load(index_path);
    if (index.tokenizer().hash() != cfg.tokenizer.hash())
        throw Error("config-hash mismatch: index tokenizer differs from config; rerun 'index'");
    auto s = split_from_json(json::parse(read_file(split_path)));
    auto queries = build_queries(rc, s);

    std::string out;
    Qrels train_qrels, test_qrels;
    for (const auto& q : queries) {
        auto hits = index.retrieve(q.text, cfg.retrieve_k, cfg.retrieve_field);
        json cands = json::array();
        std::set<std::string> present;
        for (const auto& h : hits) {
            cands.push_back({{"id", h.id}, {"bm25", h.score}, {"injected", false}});
            present.insert(h.id);
        }
        if (q.side == "train") {
            auto tokens = tokenize(q.text, index.tokenizer());
            for (const auto& gold : q.relevant) {
                if (present.count(gold)) continue;
                cands.push_back(
                    {{"id", gold}, {"bm25", index.score(cfg.retrieve_field, tokens, gold)}, {"injected", true}});
            }
        }
        out += json{{"query_id", q.id}, {"split", q.side}, {"query_text", q.text}, {"candidates", cands}}.dump() +
               "\n";
        auto& qrels = q.side == "train" ? train_qrels : test_qrels;
        qrels[q.id] = QueryQrels{q.relevant, q.category};
    }
    auto cand_path = out_path(cfg, artifacts::kCandidates);
    auto train_path = out_path(cfg, artifacts::kTrainQrels);
    auto test_path = out_path(cfg, artifacts::kTestQrels);
    write_file(cand_path, out);
    write_qrels(train_path, train_qrels);
    write_qrels(test_path, test_qrels);
    auto inputs = corpus_inputs(cfg);
    inputs.push_back(index_path);
    inputs.push_back(split_path);
    write_provenance(cfg, "retrieve", inputs, {cand_path, train_path, test_path});
}

void stage_featurize(const ExperimentConfig& cfg) {
    auto index_path = require_artifact(cfg, artifacts::kIndex, "index");
    auto cand_path = require_artifact(cfg, artifacts::kCandidates, "retrieve");
    auto rc = load_resolved(cfg);
    auto index = InvertedIndex::load(index_path);
    auto provider = make_provider(cfg.embedding);
    SimilarityExtractor extractor(index, *provider, rc.claims, cfg.features.layout);

    GlobalScoreSet global;
    if (cfg.features.use_global) {
        if (cfg.global_scores_path) global = GlobalScoreSet::load(*cfg.global_scores_path);
        else std::cerr << "warning: global scores enabled but no score file configured; appending zeros\n";
    }

    auto candidates = read_candidates(cand_path);
    auto s = split_from_json(json::parse(read_file(require_artifact(cfg, artifacts::kSplit, "split"))));
    auto queries = build_queries(rc, s);
    std::map<std::pair<std::string, std::string>, const Query*> query_of;
    for (const auto& q : queries) query_of[{q.side, q.id}] = &q;

    struct Raw {
        std::vector<FeatureVector> center;
        std::vector<std::vector<std::optional<FeatureVector>>> before, after;  // [slot][candidate]
    };
    std::vector<Raw> raw(candidates.size());
    std::vector<FeatureVector> train_centers;
    for (std::size_t qi = 0; qi < candidates.size(); ++qi) {
        const auto& rec = candidates[qi];
        if (rec.ids.empty()) continue;
        auto& r = raw[qi];
        r.center = base_vectors(rec.ids, extractor.similarities(rec.query_text, rec.ids));
        if (rec.side == "train") train_centers.insert(train_centers.end(), r.center.begin(), r.center.end());
        if (!cfg.features.fc) continue;

        auto q_it = query_of.find({rec.side, rec.query_id});
        if (q_it == query_of.end())
            throw Error("candidate file query " + rec.query_id + " is not in the split; rerun 'retrieve'");
        const Query& q = *q_it->second;
        const auto& t = rc.transcript(q.debate_id);
        auto window = context_window(t.sentences.size(), *t.position_of(q.line_nos.front()),
                                     *t.position_of(q.line_nos.back()), *cfg.features.fc);
        auto neighbor = [&](const std::optional<std::size_t>& pos) {
            std::vector<std::optional<FeatureVector>> per_candidate(rec.ids.size());
            if (!pos) return per_candidate;
            auto vectors = base_vectors(rec.ids, extractor.similarities(t.sentences[*pos].text, rec.ids));
            for (std::size_t c = 0; c < vectors.size(); ++c) per_candidate[c] = std::move(vectors[c]);
            return per_candidate;
        };
        for (const auto& pos : window.before) r.before.push_back(neighbor(pos));
        for (const auto& pos : window.after) r.after.push_back(neighbor(pos));
    }
    if (train_centers.empty()) throw Error("no training candidates to fit the feature scaler");
    auto scaler = fit_scaler(train_centers);

    const auto config_hash = cfg.features.hash();
    std::size_t global_missing = 0, global_total = 0;
    std::string out;
    for (std::size_t qi = 0; qi < candidates.size(); ++qi) {
        const auto& rec = candidates[qi];
        const auto& r = raw[qi];
        for (std::size_t c = 0; c < rec.ids.size(); ++c) {
            FeatureVector context = apply_scaler(scaler, r.center[c]);
            if (cfg.features.fc) {
                auto scaled = [&](const std::vector<std::vector<std::optional<FeatureVector>>>& slots) {
                    std::vector<std::optional<FeatureVector>> out_slots;
                    for (const auto& slot : slots)
                        out_slots.push_back(slot[c] ? std::optional(apply_scaler(scaler, *slot[c])) : std::nullopt);
                    return out_slots;
                };
                context = fc_concat(scaled(r.before), context, scaled(r.after));
            }
            auto g = cfg.features.use_global ? global.lookup(rec.query_id, rec.ids[c]) : GlobalScores{};
            if (cfg.features.use_global) {
                ++global_total;
                if (!g.present) ++global_missing;
            }
            auto final_vec = assemble(context, g, cfg.features);
            out += json{{"query_id", rec.query_id},
                        {"split", rec.side},
                        {"ver_claim_id", rec.ids[c]},
                        {"vector", final_vec},
                        {"config_hash", config_hash}}
                       .dump() +
                   "\n";
        }
    }
    if (global_missing)
        std::cerr << "note: " << global_missing << " of " << global_total
                  << " candidates have no global score triple; zeros used\n";
    auto features_path = out_path(cfg, artifacts::kFeatures);
    auto scaler_path = out_path(cfg, artifacts::kScaler);
    write_file(features_path, out);
    write_file(scaler_path, json{{"scaler", scaler.to_json()}, {"config_hash", config_hash}}.dump() + "\n");
    auto inputs = corpus_inputs(cfg);
    inputs.push_back(index_path);
    inputs.push_back(cand_path);
    if (cfg.features.use_global && cfg.global_scores_path) inputs.push_back(*cfg.global_scores_path);
    if (cfg.embedding.contains("path")) inputs.push_back(cfg.embedding.at("path").get<std::string>());
    write_provenance(cfg, "featurize", inputs, {features_path, scaler_path});
}

void stage_train(const ExperimentConfig& cfg) {
    auto features_path = require_artifact(cfg, artifacts::kFeatures, "featurize");
    auto scaler_path = require_artifact(cfg, artifacts::kScaler, "featurize");
    auto qrels_path = require_artifact(cfg, artifacts::kTrainQrels, "retrieve");
    const auto config_hash = cfg.features.hash();
    auto records = read_features(features_path, config_hash);
    auto qrels = read_qrels(qrels_path);

    std::vector<QueryPool> pools;
    for (auto& [qid, cands] : group_features(records, "train")) {
        auto it = qrels.find(qid);
        if (it == qrels.end()) throw Error("training query " + qid + " missing from " + qrels_path);
        pools.push_back({qid, std::move(cands), it->second.relevant});
    }
    ConstraintReport report;
    auto constraints = build_constraints(pools, cfg.ranker, &report);
    auto model = train(constraints, cfg.ranker);
    auto scaler_doc = json::parse(read_file(scaler_path));
    if (scaler_doc.at("config_hash") != config_hash)
        throw Error("config-hash mismatch: " + scaler_path + " is stale; rerun 'featurize'");
    model.scaler = ScalerParams::from_json(scaler_doc.at("scaler"));
    model.feature_config = cfg.features.to_json();
    model.feature_config_hash = config_hash;
    if (model.dim != cfg.features.dim())
        throw Error("feature dimension " + std::to_string(model.dim) + " does not match configuration (" +
                    std::to_string(cfg.features.dim()) + ")");
    auto model_path = out_path(cfg, artifacts::kModel);
    model.save(model_path);
    write_provenance(cfg, "train", {features_path, scaler_path, qrels_path}, {model_path});
}

void stage_rerank(const ExperimentConfig& cfg) {
    auto model_path = require_artifact(cfg, artifacts::kModel, "train");
    auto features_path = require_artifact(cfg, artifacts::kFeatures, "featurize");
    auto cand_path = require_artifact(cfg, artifacts::kCandidates, "retrieve");
    auto model = RankSVMModel::load(model_path);
    auto records = read_features(features_path, cfg.features.hash());
    Run run;
    for (const auto& rec : read_candidates(cand_path))
        if (rec.side == "test") run[rec.query_id];
    for (auto& [qid, cands] : group_features(records, "test")) {
        auto& entries = run[qid];
        for (const auto& r : rerank(model, cands, cfg.features.hash())) entries.push_back({r.ver_claim_id, r.score});
    }
    auto run_path = out_path(cfg, artifacts::kRun);
    write_run(run_path, run, cfg.name);
    write_provenance(cfg, "rerank", {model_path, features_path, cand_path}, {run_path});
}

EvalReport stage_evaluate(const ExperimentConfig& cfg) {
    auto run_path = require_artifact(cfg, artifacts::kRun, "rerank");
    auto qrels_path = require_artifact(cfg, artifacts::kTestQrels, "retrieve");
    auto run = read_run(run_path);
    auto qrels = read_qrels(qrels_path);
    auto report = evaluate(run, qrels);
    auto json_path = out_path(cfg, artifacts::kReportJson);
    auto text_path = out_path(cfg, artifacts::kReportText);
    write_file(json_path, report.to_json().dump(1) + "\n");
    write_file(text_path, report.to_table());
    write_provenance(cfg, "evaluate", {run_path, qrels_path}, {json_path, text_path});
    return report;
}

void stage_export_xh_graphs(const ExperimentConfig& cfg) {
    auto cand_path = require_artifact(cfg, artifacts::kCandidates, "retrieve");
    auto rc = load_resolved(cfg);
    auto provider = make_provider(cfg.embedding);
    std::map<std::string, const VerifiedClaim*> claims;
    for (const auto& c : rc.claims) claims.emplace(c.id, &c);
    std::vector<XhGraph> graphs;
    for (const auto& rec : read_candidates(cand_path))
        for (const auto& id : rec.ids) graphs.push_back(build_xh_graph(rec.query_id, rec.query_text, *claims.at(id), *provider));
    auto path = out_path(cfg, artifacts::kXhGraphs);
    write_xh_graphs(path, graphs);
    auto inputs = corpus_inputs(cfg);
    inputs.push_back(cand_path);
    write_provenance(cfg, "export-xh-graphs", inputs, {path});
}

EvalReport run_pipeline(const ExperimentConfig& cfg) {
    stage_index(cfg);
    stage_split(cfg);
    stage_retrieve(cfg);
    stage_featurize(cfg);
    stage_train(cfg);
    stage_rerank(cfg);
    return stage_evaluate(cfg);
}

std::vector<MatrixVariant> matrix_variants() {
    return {
        {"baseline", false, false, false, false},
        {"fc", false, false, true, false},
        {"src_coref", true, false, false, false},
        {"src_coref_fc", true, false, true, false},
        {"xh", false, false, false, true},
        {"tgt_coref", false, true, false, false},
        {"tgt_coref_xh", false, true, false, true},
        {"src_tgt_coref", true, true, false, false},
        {"all", true, true, true, true},
    };
}

ExperimentConfig variant_config(const ExperimentConfig& base, const MatrixVariant& v) {
    ExperimentConfig c = base;
    c.name = v.name;
    c.output_dir = (fs::path(base.output_dir) / v.name).string();
    if (!v.source_coref) c.source_coref_path.reset();
    if (!v.target_coref) c.target_coref_path.reset();
    c.features.fc = v.fc ? std::optional<FCConfig>(base.matrix_fc) : std::nullopt;
    c.features.use_global = v.global;
    return c;
}

std::vector<MatrixRow> run_matrix(const ExperimentConfig& cfg) {
    std::vector<MatrixRow> rows;
    for (const auto& v : matrix_variants()) {
        if ((v.source_coref && !cfg.source_coref_path) || (v.target_coref && !cfg.target_coref_path))
            std::cerr << "note: variant " << v.name << " runs with the identity resolver (no coref file configured)\n";
        rows.push_back({v.name, run_pipeline(variant_config(cfg, v))});
    }
    write_file(out_path(cfg, artifacts::kMatrixJson), matrix_json(rows).dump(1) + "\n");
    write_file(out_path(cfg, artifacts::kMatrixText), matrix_table(rows));
    return rows;
}

json matrix_json(const std::vector<MatrixRow>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        auto j = r.report.to_json();
        j.erase("per_query_ap");
        j["name"] = r.name;
        out.push_back(j);
    }
    return json{{"rows", out}};
}

std::string matrix_table(const std::vector<MatrixRow>& rows) {
    std::string out;
    char line[200];
    std::snprintf(line, sizeof(line), "%-16s %-8s %-8s %-10s %-8s %-11s %-7s\n", "config", "Overall", "clean",
                  "clean-hard", "part-of", "context-dep", "queries");
    out += line;
    for (const auto& r : rows) {
        auto cell = [&](Category c) {
            auto it = r.report.map_by_category.find(c);
            if (it == r.report.map_by_category.end()) return std::string("-");
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.3f", it->second);
            return std::string(buf);
        };
        std::snprintf(line, sizeof(line), "%-16s %-8.3f %-8s %-10s %-8s %-11s %-7zu\n", r.name.c_str(),
                      r.report.map_overall, cell(Category::clean).c_str(), cell(Category::clean_hard).c_str(),
                      cell(Category::part_of).c_str(), cell(Category::context_dep).c_str(), r.report.query_count);
        out += line;
    }
    return out;
}

}  // namespace claimrank
