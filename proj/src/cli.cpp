#include "unicrag/cli.hpp"

#include <chrono>
#include <filesystem>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unicrag/attack.hpp"
#include "unicrag/clustering.hpp"
#include "unicrag/corpus.hpp"
#include "unicrag/eval.hpp"
#include "unicrag/report.hpp"
#include "unicrag/synth.hpp"
#include "unicrag/util.hpp"

namespace unicrag {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kAttackError = 3;
constexpr int kEvalError = 4;
constexpr int kReportError = 5;
constexpr const char* kToolName = "unicrag";
constexpr const char* kToolVersion = "0.1.0";

struct Logger {
    std::ostream* err = nullptr;
    bool json_lines = false;

    void info(const std::string& msg) const { line("info", msg); }
    void error(const std::string& msg) const { line("error", msg); }

    void line(const char* level, const std::string& msg) const {
        if (!err) return;
        if (json_lines) {
            *err << json{{"level", level}, {"msg", msg}}.dump() << '\n';
        } else {
            *err << '[' << level << "] " << msg << '\n';
        }
    }
};

struct Options {
    ExperimentConfig cfg;
    std::string config_path;
    std::string method_s, objective_s, metric_s, init_s, asr_mode_s;
    std::string out_dir;
    std::string gamma_path;
    bool save_table = false;
    bool log_json = false;

    std::string report_path;
    std::string format = "csv";
    std::string report_out;

    BlobBenchmarkConfig synth_cfg;
    std::size_t synth_transfer = 0;

    std::string m_list, n_list, l_list, t_list;
};

// The config file must load before CLI11 writes flag overrides into cfg,
// so the flag is located with a simple prescan.
std::string find_config_arg(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return "";
}

std::vector<long long> parse_int_list(const std::string& s, long long fallback) {
    if (s.empty()) return {fallback};
    std::vector<long long> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string item =
            s.substr(start, comma == std::string::npos ? std::string::npos
                                                       : comma - start);
        std::size_t used = 0;
        const long long v = std::stoll(item, &used);
        if (used != item.size()) {
            throw std::invalid_argument("not an integer list element: '" + item + "'");
        }
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void add_experiment_options(CLI::App* sub, Options& o) {
    sub->fallthrough();
    sub->add_option("--config", o.config_path,
                    "JSON config file; flags override its fields");
    sub->add_option("--corpus", o.cfg.corpus_path, "corpus JSONL or TSV file");
    sub->add_option("--queries", o.cfg.query_path, "query JSONL file");
    sub->add_option("--transfer-queries", o.cfg.transfer_query_path,
                    "held-out query JSONL for transfer evaluation");
    sub->add_option("--method", o.method_s,
                    "unic-rag|unic-rag-uniform|base|extended-corpus-poisoning|"
                    "corpus-poisoning|per-query-jamming|prompt-injection");
    sub->add_option("--objective", o.objective_s,
                    "malicious-link|harmful-command|denial-of-service|custom");
    sub->add_option("--payload-variant", o.cfg.payload_variant);
    sub->add_option("--m", o.cfg.m, "queries sampled for the attack (0 = all)");
    sub->add_option("--n", o.cfg.n, "adversarial text budget / cluster count");
    sub->add_option("--t", o.cfg.t, "optimizer iterations");
    sub->add_option("--l", o.cfg.l, "adversarial prefix length in tokens");
    sub->add_option("--k", o.cfg.k_values, "retrieval depths to evaluate");
    sub->add_option("--metric", o.metric_s, "dot|cosine");
    sub->add_option("--init", o.init_s, "mask|greedy");
    sub->add_option("--candidate-pool", o.cfg.candidate_pool,
                    "top-K gradient candidates per position (0 = all)");
    sub->add_option("--positions-per-iter", o.cfg.positions_per_iter);
    sub->add_flag("--jamming-5x", o.cfg.jamming_5x,
                  "give per-query jamming a 5x text budget");
    sub->add_option("--chunk-size", o.cfg.chunk_size, "tokens per corpus chunk");
    sub->add_option("--lm", o.cfg.lm_spec,
                    "mock:instruction-following|mock:robust|mock:probabilistic:P|remote");
    sub->add_option("--asr-mode", o.asr_mode_s, "substring|denial-judge");
    sub->add_flag("--paraphrase", o.cfg.defense_paraphrase,
                  "also evaluate under the paraphrase defense");
    sub->add_option("--window", o.cfg.defense_window,
                    "retrieval depths for the window-expansion defense");
    sub->add_option("--rng-seed", o.cfg.rng_seed);
    sub->add_option("--attack-id", o.cfg.attack_id);
    sub->add_option("--encoder-table", o.cfg.encoder.table_path,
                    "embedding table JSONL (otherwise generated from seed)");
    sub->add_option("--encoder-seed", o.cfg.encoder.seed);
    sub->add_option("--encoder-dim", o.cfg.encoder.dimension);
    sub->add_option("--vocab-cap", o.cfg.encoder.vocab_cap);
    sub->add_option("--remote-url", o.cfg.remote.base_url);
    sub->add_option("--remote-path", o.cfg.remote.path);
    sub->add_option("--remote-model", o.cfg.remote.model);
    sub->add_option("--api-key-env", o.cfg.remote.api_key_env,
                    "environment variable holding the bearer token");
    sub->add_option("--temperature", o.cfg.remote.temperature);
    sub->add_option("--timeout-ms", o.cfg.remote.timeout_ms);
    sub->add_option("--max-retries", o.cfg.remote.max_retries);
    sub->add_option("--backoff-ms", o.cfg.remote.backoff_ms);
    sub->add_option("--max-in-flight", o.cfg.remote.max_in_flight);
}

void apply_enum_overrides(Options& o) {
    if (!o.method_s.empty()) o.cfg.method = attack_method_from_string(o.method_s);
    if (!o.objective_s.empty()) {
        o.cfg.objective = attack_objective_from_string(o.objective_s);
    }
    if (!o.metric_s.empty()) {
        o.cfg.metric = similarity_metric_from_string(o.metric_s);
    }
    if (!o.init_s.empty()) o.cfg.init = prefix_init_from_string(o.init_s);
    if (!o.asr_mode_s.empty()) o.cfg.asr_mode = asr_mode_from_string(o.asr_mode_s);
}

std::string file_hash_hex(const fs::path& p) { return hex64(hash_file(p.string())); }

void write_manifest(const fs::path& dir, const std::string& name,
                    const std::string& command, const json& config_echo,
                    const json& inputs, const json& outputs, const Logger& log) {
    const json doc = {
        {"command", command},
        {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
        {"config", config_echo},
        {"inputs", inputs},
        {"outputs", outputs},
    };
    const fs::path p = dir / name;
    write_file(p.string(), doc.dump(2) + "\n");
    log.info("wrote " + p.string());
}

void write_gamma_artifacts(const fs::path& dir, const BuiltAttack& built,
                           json& outputs, const Logger& log) {
    const fs::path gamma = dir / "gamma.jsonl";
    save_gamma(built.gamma, gamma.string());
    outputs["gamma.jsonl"] = file_hash_hex(gamma);
    log.info("wrote " + gamma.string());
    if (built.partition) {
        const fs::path part = dir / "partition.json";
        save_partition(*built.partition, part.string());
        outputs["partition.json"] = file_hash_hex(part);
        log.info("wrote " + part.string());
    }
}

void write_eval_artifacts(const fs::path& dir, const ExperimentReport& rep,
                          json& outputs, const Logger& log) {
    const fs::path report = dir / "report.json";
    write_file(report.string(), rep.body.dump(2) + "\n");
    outputs["report.json"] = file_hash_hex(report);
    log.info("wrote " + report.string());

    const fs::path per_query = dir / "per_query.jsonl";
    save_outcomes(rep.outcomes, per_query.string());
    outputs["per_query.jsonl"] = file_hash_hex(per_query);
    log.info("wrote " + per_query.string());

    // wall-clock sidecar: deliberately kept out of the hashed outputs
    const fs::path timing = dir / "timing.json";
    write_file(timing.string(), rep.timing.dump(2) + "\n");
    log.info("wrote " + timing.string());
}

int cmd_synth(Options& o, const Logger& log) {
    try {
        BlobBenchmarkConfig bc = o.synth_cfg;
        bc.n_queries += o.synth_transfer;
        const auto bench = make_blob_benchmark(bc);

        const fs::path dir(o.out_dir);
        fs::create_directories(dir);

        QuerySet train, transfer;
        train.role = QuerySetRole::AttackTraining;
        transfer.role = QuerySetRole::TransferEvaluation;
        const std::size_t n_train = bench.queries.size() - o.synth_transfer;
        for (std::size_t i = 0; i < bench.queries.size(); ++i) {
            auto& dst = i < n_train ? train : transfer;
            dst.queries.push_back(bench.queries.queries[i]);
        }

        json outputs = json::object();
        save_corpus(bench.corpus, (dir / "corpus.jsonl").string());
        outputs["corpus.jsonl"] = file_hash_hex(dir / "corpus.jsonl");
        save_queries(train, (dir / "queries.jsonl").string());
        outputs["queries.jsonl"] = file_hash_hex(dir / "queries.jsonl");
        if (o.synth_transfer > 0) {
            save_queries(transfer, (dir / "transfer_queries.jsonl").string());
            outputs["transfer_queries.jsonl"] =
                file_hash_hex(dir / "transfer_queries.jsonl");
        }
        bench.encoder->save_table((dir / "table.jsonl").string());
        outputs["table.jsonl"] = file_hash_hex(dir / "table.jsonl");

        const json config_echo = {
            {"n_blobs", bc.n_blobs},
            {"n_chunks", bc.n_chunks},
            {"n_queries", n_train},
            {"n_transfer_queries", o.synth_transfer},
            {"natural_tokens_per_blob", bc.natural_tokens_per_blob},
            {"amplified_tokens_per_blob", bc.amplified_tokens_per_blob},
            {"chunk_tokens", bc.chunk_tokens},
            {"query_tokens", bc.query_tokens},
            {"dimension", bc.dimension},
            {"token_noise", bc.token_noise},
            {"amplification_min", bc.amplification_min},
            {"amplification_max", bc.amplification_max},
            {"seed", bc.seed},
        };
        write_manifest(dir, "synth_manifest.json", "synth", config_echo,
                       json::object(), outputs, log);
        log.info("generated " + std::to_string(bench.corpus.size()) + " chunks and " +
                 std::to_string(bench.queries.size()) + " queries");
        return kOk;
    } catch (const std::exception& e) {
        log.error(e.what());
        return kInputError;
    }
}

int cmd_ingest(Options& o, const Logger& log) {
    try {
        const fs::path dir(o.out_dir);
        fs::create_directories(dir);
        const PreparedInputs inputs = prepare_inputs(o.cfg);

        json outputs = json::object();
        save_corpus(inputs.kb, (dir / "corpus_chunks.jsonl").string());
        outputs["corpus_chunks.jsonl"] = file_hash_hex(dir / "corpus_chunks.jsonl");
        save_queries(inputs.queries, (dir / "queries_sampled.jsonl").string());
        outputs["queries_sampled.jsonl"] = file_hash_hex(dir / "queries_sampled.jsonl");
        inputs.encoder->save_table((dir / "table.jsonl").string());
        outputs["table.jsonl"] = file_hash_hex(dir / "table.jsonl");

        write_manifest(dir, "ingest_manifest.json", "ingest", config_to_json(o.cfg),
                       inputs.input_hashes, outputs, log);
        log.info("ingested " + std::to_string(inputs.kb.size()) + " chunks, sampled " +
                 std::to_string(inputs.queries.size()) + " queries");
        return kOk;
    } catch (const std::exception& e) {
        log.error(e.what());
        return kInputError;
    }
}

int cmd_attack(Options& o, const Logger& log) {
    PreparedInputs inputs;
    try {
        fs::create_directories(o.out_dir);
        inputs = prepare_inputs(o.cfg);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kInputError;
    }
    BuiltAttack built;
    try {
        built = build_attack(o.cfg, inputs.queries, *inputs.encoder);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kAttackError;
    }
    try {
        const fs::path dir(o.out_dir);
        json outputs = json::object();
        write_gamma_artifacts(dir, built, outputs, log);
        if (o.save_table) {
            inputs.encoder->save_table((dir / "table.jsonl").string());
            outputs["table.jsonl"] = file_hash_hex(dir / "table.jsonl");
        }
        write_manifest(dir, "attack_manifest.json", "attack", config_to_json(o.cfg),
                       inputs.input_hashes, outputs, log);
        log.info("optimized " + std::to_string(built.gamma.size()) +
                 " adversarial texts");
        return kOk;
    } catch (const std::exception& e) {
        log.error(e.what());
        return kAttackError;
    }
}

int cmd_eval(Options& o, std::ostream& out, const Logger& log) {
    PreparedInputs inputs;
    try {
        fs::create_directories(o.out_dir);
        inputs = prepare_inputs(o.cfg);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kInputError;
    }

    BuiltAttack built;
    double attack_seconds = 0.0;
    if (!o.gamma_path.empty()) {
        try {
            built.gamma = load_gamma(o.gamma_path);
            if (built.gamma.empty()) {
                throw std::runtime_error("gamma file holds no adversarial texts: " +
                                         o.gamma_path);
            }
            built.attack_id = built.gamma.front().attack_id;
            built.payload = built.gamma.front().payload;
            inputs.input_hashes["gamma"] = hex64(hash_file(o.gamma_path));
        } catch (const std::exception& e) {
            log.error(e.what());
            return kInputError;
        }
    } else {
        try {
            const auto t0 = std::chrono::steady_clock::now();
            built = build_attack(o.cfg, inputs.queries, *inputs.encoder);
            attack_seconds = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        } catch (const std::exception& e) {
            log.error(e.what());
            return kAttackError;
        }
    }

    ExperimentReport rep;
    try {
        rep = evaluate_built(o.cfg, inputs, built, attack_seconds);
        const fs::path dir(o.out_dir);
        json outputs = json::object();
        write_eval_artifacts(dir, rep, outputs, log);
        write_manifest(dir, "eval_manifest.json", "eval", config_to_json(o.cfg),
                       inputs.input_hashes, outputs, log);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kEvalError;
    }
    try {
        out << report_csv(rep.body);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kReportError;
    }
    return kOk;
}

int cmd_report(Options& o, std::ostream& out, const Logger& log) {
    json body;
    try {
        body = json::parse(read_file(o.report_path));
    } catch (const std::exception& e) {
        log.error(e.what());
        return kInputError;
    }
    std::string rendered;
    try {
        rendered = o.format == "csv" ? report_csv(body) : report_markdown(body);
        if (o.report_out.empty()) {
            out << rendered;
        } else {
            write_file(o.report_out, rendered);
            log.info("wrote " + o.report_out);
        }
    } catch (const std::exception& e) {
        log.error(e.what());
        return kReportError;
    }
    return kOk;
}

int cmd_run(Options& o, std::ostream& out, const Logger& log) {
    PreparedInputs inputs;
    try {
        fs::create_directories(o.out_dir);
        inputs = prepare_inputs(o.cfg);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kInputError;
    }
    BuiltAttack built;
    double attack_seconds = 0.0;
    try {
        const auto t0 = std::chrono::steady_clock::now();
        built = build_attack(o.cfg, inputs.queries, *inputs.encoder);
        attack_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
    } catch (const std::exception& e) {
        log.error(e.what());
        return kAttackError;
    }
    ExperimentReport rep;
    json outputs = json::object();
    const fs::path dir(o.out_dir);
    try {
        rep = evaluate_built(o.cfg, inputs, built, attack_seconds);
        write_gamma_artifacts(dir, built, outputs, log);
        write_eval_artifacts(dir, rep, outputs, log);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kEvalError;
    }
    try {
        const std::string csv = report_csv(rep.body);
        write_file((dir / "report.csv").string(), csv);
        outputs["report.csv"] = file_hash_hex(dir / "report.csv");
        write_file((dir / "report.md").string(), report_markdown(rep.body));
        outputs["report.md"] = file_hash_hex(dir / "report.md");
        write_manifest(dir, "run_manifest.json", "run", config_to_json(o.cfg),
                       inputs.input_hashes, outputs, log);
        out << csv;
    } catch (const std::exception& e) {
        log.error(e.what());
        return kReportError;
    }
    return kOk;
}

int cmd_sweep(Options& o, const Logger& log) {
    std::vector<long long> ms, ns, ls, ts;
    fs::path dir(o.out_dir);
    try {
        ms = parse_int_list(o.m_list, static_cast<long long>(o.cfg.m));
        ns = parse_int_list(o.n_list, static_cast<long long>(o.cfg.n));
        ls = parse_int_list(o.l_list, o.cfg.l);
        ts = parse_int_list(o.t_list, o.cfg.t);
        fs::create_directories(dir);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kInputError;
    }

    json summary = json::array();
    json outputs = json::object();
    json inputs_echo = json::object();
    for (const long long m : ms) {
        for (const long long n : ns) {
            for (const long long l : ls) {
                for (const long long t : ts) {
                    ExperimentConfig cfg = o.cfg;
                    cfg.m = static_cast<std::size_t>(m);
                    cfg.n = static_cast<std::size_t>(n);
                    cfg.l = static_cast<int>(l);
                    cfg.t = static_cast<int>(t);
                    PreparedInputs inputs;
                    try {
                        inputs = prepare_inputs(cfg);
                    } catch (const std::exception& e) {
                        log.error(e.what());
                        return kInputError;
                    }
                    inputs_echo = inputs.input_hashes;
                    BuiltAttack built;
                    try {
                        built = build_attack(cfg, inputs.queries, *inputs.encoder);
                    } catch (const std::exception& e) {
                        log.error(e.what());
                        return kAttackError;
                    }
                    ExperimentReport rep;
                    const std::string name = "report-m" + std::to_string(m) + "-n" +
                                             std::to_string(n) + "-l" +
                                             std::to_string(l) + "-t" +
                                             std::to_string(t) + ".json";
                    try {
                        rep = evaluate_built(cfg, inputs, built);
                        write_file((dir / name).string(), rep.body.dump(2) + "\n");
                        outputs[name] = file_hash_hex(dir / name);
                        log.info("wrote " + (dir / name).string());
                    } catch (const std::exception& e) {
                        log.error(e.what());
                        return kEvalError;
                    }
                    summary.push_back({{"m", m},
                                       {"n", n},
                                       {"l", l},
                                       {"t", t},
                                       {"report", name},
                                       {"rows", rep.body.at("rows")}});
                }
            }
        }
    }
    try {
        write_file((dir / "sweep_summary.json").string(), summary.dump(2) + "\n");
        outputs["sweep_summary.json"] = file_hash_hex(dir / "sweep_summary.json");
        log.info("wrote " + (dir / "sweep_summary.json").string());
        write_manifest(dir, "sweep_manifest.json", "sweep", config_to_json(o.cfg),
                       inputs_echo, outputs, log);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kEvalError;
    }
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    Options opts;
    Logger log{&err, false};

    const std::string config_path = find_config_arg(args);
    if (!config_path.empty()) {
        try {
            opts.cfg = config_from_json(json::parse(read_file(config_path)));
        } catch (const std::exception& e) {
            log.error(std::string("failed to load config: ") + e.what());
            return kInputError;
        }
    }

    CLI::App app{"red-team toolkit for universal knowledge corruption of RAG pipelines"};
    app.name(kToolName);
    app.set_version_flag("--version", kToolVersion);
    app.add_flag("--log-json", opts.log_json, "emit line-oriented JSON logs");
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "generate the synthetic blob benchmark");
    synth->fallthrough();
    synth->add_option("--out", opts.out_dir, "output directory")->required();
    synth->add_option("--seed", opts.synth_cfg.seed);
    synth->add_option("--blobs", opts.synth_cfg.n_blobs);
    synth->add_option("--chunks", opts.synth_cfg.n_chunks);
    synth->add_option("--queries", opts.synth_cfg.n_queries);
    synth->add_option("--natural-tokens", opts.synth_cfg.natural_tokens_per_blob);
    synth->add_option("--amplified-tokens", opts.synth_cfg.amplified_tokens_per_blob);
    synth->add_option("--chunk-tokens", opts.synth_cfg.chunk_tokens);
    synth->add_option("--query-tokens", opts.synth_cfg.query_tokens);
    synth->add_option("--dimension", opts.synth_cfg.dimension);
    synth->add_option("--noise", opts.synth_cfg.token_noise);
    synth->add_option("--amp-min", opts.synth_cfg.amplification_min);
    synth->add_option("--amp-max", opts.synth_cfg.amplification_max);
    synth->add_option("--transfer", opts.synth_transfer,
                      "extra held-out transfer queries");

    auto* ingest = app.add_subcommand(
        "ingest", "chunk a corpus, sample queries, freeze the encoder");
    add_experiment_options(ingest, opts);
    ingest->add_option("--out", opts.out_dir, "output directory")->required();

    auto* attack = app.add_subcommand("attack", "optimize adversarial texts");
    add_experiment_options(attack, opts);
    attack->add_option("--out", opts.out_dir, "output directory")->required();
    attack->add_flag("--save-table", opts.save_table,
                     "also write the encoder table next to gamma");

    auto* eval = app.add_subcommand("eval", "inject texts and measure RSR/ASR");
    add_experiment_options(eval, opts);
    eval->add_option("--out", opts.out_dir, "output directory")->required();
    eval->add_option("--gamma", opts.gamma_path,
                     "evaluate a previously saved gamma JSONL instead of attacking");

    auto* report = app.add_subcommand("report", "render a report body as CSV/markdown");
    report->fallthrough();
    report->add_option("--report", opts.report_path, "report.json path")->required();
    report->add_option("--format", opts.format, "csv|md")
        ->check(CLI::IsMember({"csv", "md"}));
    report->add_option("--out", opts.report_out, "output file (default: stdout)");

    auto* sweep = app.add_subcommand("sweep", "grid of experiments over m/n/l/t");
    add_experiment_options(sweep, opts);
    sweep->add_option("--out", opts.out_dir, "output directory")->required();
    sweep->add_option("--m-list", opts.m_list, "comma-separated m values");
    sweep->add_option("--n-list", opts.n_list, "comma-separated n values");
    sweep->add_option("--l-list", opts.l_list, "comma-separated l values");
    sweep->add_option("--t-list", opts.t_list, "comma-separated t values");

    auto* run = app.add_subcommand("run", "attack + eval + report in one pass");
    add_experiment_options(run, opts);
    run->add_option("--out", opts.out_dir, "output directory")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back(kToolName);
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }
    log.json_lines = opts.log_json;

    try {
        apply_enum_overrides(opts);
    } catch (const std::exception& e) {
        log.error(e.what());
        return kInputError;
    }

    if (synth->parsed()) return cmd_synth(opts, log);
    if (ingest->parsed()) return cmd_ingest(opts, log);
    if (attack->parsed()) return cmd_attack(opts, log);
    if (eval->parsed()) return cmd_eval(opts, out, log);
    if (report->parsed()) return cmd_report(opts, out, log);
    if (sweep->parsed()) return cmd_sweep(opts, log);
    if (run->parsed()) return cmd_run(opts, out, log);
    log.error("no subcommand given");
    return kInputError;
}

}  // namespace unicrag
