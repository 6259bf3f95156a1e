#include "unicrag/eval.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "unicrag/retriever.hpp"
#include "unicrag/rng.hpp"
#include "unicrag/util.hpp"

namespace unicrag {

namespace {

using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point start) {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(now - start).count();
}

std::unordered_set<std::string> adversarial_ids(const KnowledgeBase& kb) {
    std::unordered_set<std::string> ids;
    for (const auto& chunk : kb.chunks) {
        if (chunk.provenance == Provenance::Adversarial) ids.insert(chunk.id);
    }
    return ids;
}

// Keeps the queries in their original order regardless of draw order.
QuerySet sample_queries(const QuerySet& qs, std::size_t count, std::uint64_t seed) {
    if (count == 0 || count >= qs.size()) return qs;
    SeededRng rng(seed);
    auto picked = rng.sample_without_replacement(qs.size(), count);
    std::sort(picked.begin(), picked.end());
    QuerySet out;
    out.role = qs.role;
    out.queries.reserve(count);
    for (const auto i : picked) out.queries.push_back(qs.queries[i]);
    return out;
}

}  // namespace

std::string to_string(AttackMethod method) {
    switch (method) {
        case AttackMethod::UnicRag: return "unic-rag";
        case AttackMethod::UnicRagUniform: return "unic-rag-uniform";
        case AttackMethod::Base: return "base";
        case AttackMethod::ExtendedCorpusPoisoning: return "extended-corpus-poisoning";
        case AttackMethod::CorpusPoisoning: return "corpus-poisoning";
        case AttackMethod::PerQueryJamming: return "per-query-jamming";
        case AttackMethod::PromptInjectionOnly: return "prompt-injection";
    }
    throw std::logic_error("unhandled attack method");
}

AttackMethod attack_method_from_string(const std::string& name) {
    if (name == "unic-rag") return AttackMethod::UnicRag;
    if (name == "unic-rag-uniform") return AttackMethod::UnicRagUniform;
    if (name == "base") return AttackMethod::Base;
    if (name == "extended-corpus-poisoning") return AttackMethod::ExtendedCorpusPoisoning;
    if (name == "corpus-poisoning") return AttackMethod::CorpusPoisoning;
    if (name == "per-query-jamming") return AttackMethod::PerQueryJamming;
    if (name == "prompt-injection") return AttackMethod::PromptInjectionOnly;
    throw std::invalid_argument("unknown attack method: " + name);
}

std::string to_string(AsrMode mode) {
    return mode == AsrMode::Substring ? "substring" : "denial-judge";
}

AsrMode asr_mode_from_string(const std::string& name) {
    if (name == "substring") return AsrMode::Substring;
    if (name == "denial-judge") return AsrMode::DenialJudge;
    throw std::invalid_argument("unknown asr mode: " + name);
}

double retrieval_success_rate(const QuerySet& queries, const KnowledgeBase& corrupted,
                              int k, SimilarityMetric metric,
                              const TextEncoder& encoder) {
    if (queries.size() == 0) {
        throw std::invalid_argument("retrieval success rate over empty query set");
    }
    const auto adv = adversarial_ids(corrupted);
    if (adv.empty()) {
        throw std::runtime_error("no adversarial chunks in knowledge base");
    }
    std::size_t hits = 0;
    for (const auto& q : queries.queries) {
        const auto result = retrieve_topk(q.text, corrupted, k, metric, encoder, q.id);
        for (const auto& sc : result.ranked) {
            if (adv.count(sc.chunk_id)) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(queries.size());
}

double attack_success_rate(const QuerySet& queries, const KnowledgeBase& corrupted,
                           int k, SimilarityMetric metric,
                           const TextEncoder& encoder, LMAdapter& adapter,
                           const std::optional<Payload>& payload, AsrMode mode,
                           std::vector<QueryOutcome>* outcomes) {
    if (queries.size() == 0) {
        throw std::invalid_argument("attack success rate over empty query set");
    }
    const auto adv = adversarial_ids(corrupted);
    std::unordered_map<std::string, const TextChunk*> by_id;
    by_id.reserve(corrupted.size());
    for (const auto& chunk : corrupted.chunks) by_id.emplace(chunk.id, &chunk);

    std::size_t successes = 0;
    for (const auto& q : queries.queries) {
        QueryOutcome outcome;
        outcome.k = k;
        outcome.query_id = q.id;
        const auto result = retrieve_topk(q.text, corrupted, k, metric, encoder, q.id);
        std::vector<std::string> contexts;
        contexts.reserve(result.ranked.size());
        for (const auto& sc : result.ranked) {
            contexts.push_back(by_id.at(sc.chunk_id)->text);
            if (adv.count(sc.chunk_id)) outcome.retrieved_adversarial = true;
        }
        const auto prompt = assemble_prompt(q.text, contexts);
        try {
            outcome.response = adapter.generate(prompt);
            if (mode == AsrMode::Substring) {
                outcome.success = payload && !payload->target_marker.empty() &&
                                  outcome.response.find(payload->target_marker) !=
                                      std::string::npos;
            } else {
                outcome.success =
                    adapter.judge_denial(q.text, outcome.response) == Judgment::No;
            }
        } catch (const std::exception& e) {
            // a query the model never answered cannot count as attacked
            outcome.success = false;
            outcome.error = e.what();
        }
        if (outcome.success) ++successes;
        if (outcomes) outcomes->push_back(std::move(outcome));
    }
    return static_cast<double>(successes) / static_cast<double>(queries.size());
}

ParaphraseResult paraphrase_defense(LMAdapter& adapter, const QuerySet& queries) {
    ParaphraseResult out;
    out.queries.role = queries.role;
    out.queries.queries.reserve(queries.size());
    for (const auto& q : queries.queries) {
        Query p = q;
        try {
            p.text = adapter.paraphrase(q.text);
        } catch (const std::exception&) {
            ++out.errors;  // keep the original query text
        }
        out.queries.queries.push_back(std::move(p));
    }
    return out;
}

json metrics_over_k(const QuerySet& queries, const KnowledgeBase& corrupted,
                    const std::vector<int>& k_values, SimilarityMetric metric,
                    const TextEncoder& encoder, LMAdapter& adapter,
                    const std::optional<Payload>& payload, AsrMode mode,
                    const std::string& method_name, const std::string& defense_name,
                    std::vector<QueryOutcome>* outcomes) {
    if (k_values.empty()) throw std::invalid_argument("k_values must be non-empty");
    json rows = json::array();
    std::vector<std::pair<int, double>> rsr_by_k;
    for (const int k : k_values) {
        const double rsr = retrieval_success_rate(queries, corrupted, k, metric, encoder);
        const std::size_t first = outcomes ? outcomes->size() : 0;
        const double asr = attack_success_rate(queries, corrupted, k, metric, encoder,
                                               adapter, payload, mode, outcomes);
        if (outcomes) {
            for (std::size_t i = first; i < outcomes->size(); ++i) {
                (*outcomes)[i].method = method_name;
                (*outcomes)[i].defense = defense_name;
            }
        }
        rsr_by_k.emplace_back(k, rsr);
        rows.push_back({{"k", k}, {"rsr", rsr}, {"asr", asr}});
    }
    for (const auto& [k1, r1] : rsr_by_k) {
        for (const auto& [k2, r2] : rsr_by_k) {
            if (k1 < k2 && r1 > r2 + 1e-12) {
                throw std::logic_error(
                    "retrieval success rate decreased as k grew (internal error)");
            }
        }
    }
    return rows;
}

PreparedInputs prepare_inputs(const ExperimentConfig& cfg) {
    if (cfg.corpus_path.empty() || cfg.query_path.empty()) {
        throw std::invalid_argument("corpus_path and query_path are required");
    }
    PreparedInputs out;
    out.input_hashes = json::object();
    out.input_hashes["corpus"] = hex64(hash_file(cfg.corpus_path));
    out.input_hashes["queries"] = hex64(hash_file(cfg.query_path));

    KnowledgeBase raw = load_corpus(cfg.corpus_path);
    std::unordered_set<std::string> seen;
    for (auto& chunk : raw.chunks) {
        if (cfg.chunk_size > 0 &&
            chunk.token_count > static_cast<int>(cfg.chunk_size)) {
            auto pieces = chunk_document(chunk.id, chunk.text, cfg.chunk_size);
            for (auto& piece : pieces) {
                piece.provenance = chunk.provenance;
                piece.attack_id = chunk.attack_id;
                if (!seen.insert(piece.id).second) {
                    throw std::runtime_error("duplicate chunk id after chunking: " +
                                             piece.id);
                }
                out.kb.chunks.push_back(std::move(piece));
            }
        } else {
            if (!seen.insert(chunk.id).second) {
                throw std::runtime_error("duplicate chunk id after chunking: " +
                                         chunk.id);
            }
            out.kb.chunks.push_back(std::move(chunk));
        }
    }

    QuerySet all = load_queries(cfg.query_path, QuerySetRole::AttackTraining);
    out.queries = sample_queries(all, cfg.m, cfg.rng_seed);

    if (!cfg.transfer_query_path.empty()) {
        out.input_hashes["transfer_queries"] = hex64(hash_file(cfg.transfer_query_path));
        out.transfer = load_queries(cfg.transfer_query_path,
                                    QuerySetRole::TransferEvaluation);
    }

    if (!cfg.encoder.table_path.empty()) {
        out.input_hashes["encoder_table"] = hex64(hash_file(cfg.encoder.table_path));
        out.encoder = std::make_shared<MeanPoolingEncoder>(
            MeanPoolingEncoder::from_table_file(cfg.encoder.table_path));
    } else {
        // The encoder belongs to the serving pipeline, so its vocabulary
        // covers everything that pipeline sees: corpus plus all queries.
        std::vector<std::string> texts;
        texts.reserve(out.kb.size() + all.size() +
                      (out.transfer ? out.transfer->size() : 0));
        for (const auto& chunk : out.kb.chunks) texts.push_back(chunk.text);
        for (const auto& q : all.queries) texts.push_back(q.text);
        if (out.transfer) {
            for (const auto& q : out.transfer->queries) texts.push_back(q.text);
        }
        auto vocab = build_vocabulary(texts, cfg.encoder.vocab_cap);
        out.encoder = std::make_shared<MeanPoolingEncoder>(MeanPoolingEncoder::from_seed(
            std::move(vocab), cfg.encoder.dimension, cfg.encoder.seed));
    }
    ensure_index(out.kb, *out.encoder);
    return out;
}

BuiltAttack build_attack(const ExperimentConfig& cfg, const QuerySet& queries,
                         const MeanPoolingEncoder& encoder) {
    if (cfg.n == 0) throw std::invalid_argument("n must be positive");
    if (queries.size() == 0) {
        throw std::invalid_argument("cannot build an attack from zero queries");
    }

    BuiltAttack out;
    out.attack_id = cfg.attack_id.empty() ? to_string(cfg.method) : cfg.attack_id;

    Payload payload = cfg.custom_payload
                          ? *cfg.custom_payload
                          : craft_payload(cfg.objective, cfg.payload_variant);

    OptimizerConfig opt;
    opt.iterations = cfg.t;
    opt.prefix_length = cfg.l;
    opt.candidate_pool = cfg.candidate_pool;
    opt.positions_per_iter = cfg.positions_per_iter;
    opt.rng_seed = cfg.rng_seed;
    opt.init = cfg.init;

    // Cluster-based methods need n distinct seed queries.
    const std::size_t n = std::min(cfg.n, queries.size());

    switch (cfg.method) {
        case AttackMethod::UnicRag: {
            out.partition = balanced_similarity_clustering(queries, encoder, cfg.metric,
                                                           n, cfg.rng_seed);
            out.payload = payload;
            out.gamma = optimize_for_partition(queries, *out.partition, out.payload,
                                               encoder, cfg.metric, opt, out.attack_id);
            break;
        }
        case AttackMethod::UnicRagUniform: {
            out.partition = uniform_partition(queries, encoder, n, cfg.rng_seed);
            out.payload = payload;
            out.gamma = optimize_for_partition(queries, *out.partition, out.payload,
                                               encoder, cfg.metric, opt, out.attack_id);
            break;
        }
        case AttackMethod::Base: {
            opt.init = PrefixInit::MaskTokens;
            out.partition = balanced_similarity_clustering(queries, encoder, cfg.metric,
                                                           n, cfg.rng_seed);
            out.payload = payload;
            out.gamma = optimize_for_partition(queries, *out.partition, out.payload,
                                               encoder, cfg.metric, opt, out.attack_id);
            break;
        }
        case AttackMethod::ExtendedCorpusPoisoning: {
            opt.init = PrefixInit::MaskTokens;
            out.partition = kmeans_partition(queries, encoder, n, cfg.rng_seed);
            out.payload = payload;
            out.gamma = optimize_for_partition(queries, *out.partition, out.payload,
                                               encoder, cfg.metric, opt, out.attack_id);
            break;
        }
        case AttackMethod::CorpusPoisoning: {
            // Prefix-only texts, budget-matched to the payload length.
            opt.init = PrefixInit::MaskTokens;
            opt.prefix_length += encoder.token_count(payload.text);
            out.partition = kmeans_partition(queries, encoder, n, cfg.rng_seed);
            out.payload = std::nullopt;
            out.gamma = optimize_for_partition(queries, *out.partition, std::nullopt,
                                               encoder, cfg.metric, opt, out.attack_id);
            break;
        }
        case AttackMethod::PerQueryJamming: {
            const std::size_t budget =
                std::min(cfg.jamming_5x ? 5 * cfg.n : cfg.n, queries.size());
            const QuerySet picked = sample_queries(queries, budget, cfg.rng_seed);
            out.payload = payload;
            out.gamma = per_query_jamming_baseline(picked, payload, encoder, cfg.metric,
                                                   out.attack_id);
            break;
        }
        case AttackMethod::PromptInjectionOnly: {
            out.payload = payload;
            out.gamma = prompt_injection_only(payload, cfg.n, out.attack_id);
            break;
        }
    }
    return out;
}

json transfer_evaluate(const QuerySet& attack_queries, const QuerySet& transfer_queries,
                       const KnowledgeBase& corrupted, const std::vector<int>& k_values,
                       SimilarityMetric metric, const TextEncoder& encoder,
                       LMAdapter& adapter, const std::optional<Payload>& payload,
                       AsrMode mode, std::vector<QueryOutcome>* outcomes) {
    std::unordered_set<std::string> attack_ids;
    for (const auto& q : attack_queries.queries) attack_ids.insert(q.id);
    for (const auto& q : transfer_queries.queries) {
        if (attack_ids.count(q.id)) {
            throw std::invalid_argument(
                "transfer query id overlaps attack-training set: " + q.id);
        }
    }
    return metrics_over_k(transfer_queries, corrupted, k_values, metric, encoder,
                          adapter, payload, mode, "transfer", "none", outcomes);
}

ExperimentReport evaluate_built(const ExperimentConfig& cfg,
                                const PreparedInputs& inputs,
                                const BuiltAttack& built, double attack_seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report;

    const KnowledgeBase corrupted =
        inject(inputs.kb, to_records(built.gamma), inputs.encoder.get());

    std::vector<Payload> extra;
    if (built.payload) extra.push_back(*built.payload);
    auto adapter = make_adapter(cfg.lm_spec, cfg.remote, extra, cfg.rng_seed);

    const std::string method_name = to_string(cfg.method);
    json rows = json::array();
    rows.push_back(
        {{"method", method_name},
         {"defense", "none"},
         {"metrics", metrics_over_k(inputs.queries, corrupted, cfg.k_values, cfg.metric,
                                    *inputs.encoder, *adapter, built.payload,
                                    cfg.asr_mode, method_name, "none",
                                    &report.outcomes)}});

    json defense_notes = json::object();
    if (cfg.defense_paraphrase) {
        auto para = paraphrase_defense(*adapter, inputs.queries);
        defense_notes["paraphrase_errors"] = para.errors;
        rows.push_back(
            {{"method", method_name},
             {"defense", "paraphrase"},
             {"metrics", metrics_over_k(para.queries, corrupted, cfg.k_values,
                                        cfg.metric, *inputs.encoder, *adapter,
                                        built.payload, cfg.asr_mode, method_name,
                                        "paraphrase", &report.outcomes)}});
    }
    if (!cfg.defense_window.empty()) {
        rows.push_back(
            {{"method", method_name},
             {"defense", "window-expansion"},
             {"metrics", metrics_over_k(inputs.queries, corrupted, cfg.defense_window,
                                        cfg.metric, *inputs.encoder, *adapter,
                                        built.payload, cfg.asr_mode, method_name,
                                        "window-expansion", &report.outcomes)}});
    }

    json transfer = nullptr;
    if (inputs.transfer) {
        const std::size_t first = report.outcomes.size();
        transfer = transfer_evaluate(inputs.queries, *inputs.transfer, corrupted,
                                     cfg.k_values, cfg.metric, *inputs.encoder, *adapter,
                                     built.payload, cfg.asr_mode, &report.outcomes);
        for (std::size_t i = first; i < report.outcomes.size(); ++i) {
            report.outcomes[i].method = method_name;
            report.outcomes[i].defense = "transfer";
        }
    }

    json objective_values = json::array();
    double objective_sum = 0.0;
    std::size_t converged = 0;
    for (const auto& adv : built.gamma) {
        objective_values.push_back(adv.objective_value);
        objective_sum += adv.objective_value;
        if (adv.converged) ++converged;
    }
    json attack_summary = {
        {"attack_id", built.attack_id},
        {"method", method_name},
        {"texts", built.gamma.size()},
        {"objective", built.payload ? json(to_string(built.payload->objective))
                                    : json(nullptr)},
        {"payload_variant",
         built.payload ? json(built.payload->variant) : json(nullptr)},
        {"objective_values", objective_values},
        {"mean_objective", built.gamma.empty()
                               ? 0.0
                               : objective_sum / static_cast<double>(built.gamma.size())},
        {"converged", converged},
    };
    if (built.partition) {
        json sizes = json::array();
        for (const auto& c : built.partition->clusters) sizes.push_back(c.member_ids.size());
        attack_summary["cluster_sizes"] = sizes;
        attack_summary["partition_method"] = to_string(built.partition->method);
    }

    const auto& table = inputs.encoder->table();
    json encoder_info = {
        {"dimension", table.dimension()},
        {"vocab_size", inputs.encoder->tokenizer().vocab_size()},
        {"seed", table.seed ? json(*table.seed) : json(nullptr)},
    };

    report.body = {
        {"config", config_to_json(cfg)},
        {"inputs", inputs.input_hashes},
        {"encoder", encoder_info},
        {"judge_prompt_hash", hex64(judge_prompt_hash())},
        {"attack", attack_summary},
        {"corpus", {{"chunks", inputs.kb.size()},
                    {"injected", built.gamma.size()},
                    {"queries", inputs.queries.size()}}},
        {"rows", rows},
        {"defense_notes", defense_notes},
        {"transfer", transfer},
    };
    report.timing = {
        {"attack_seconds", attack_seconds},
        {"eval_seconds", seconds_since(t0)},
        {"total_seconds", attack_seconds + seconds_since(t0)},
    };
    return report;
}

ExperimentReport run_experiment_prepared(const ExperimentConfig& cfg,
                                         const PreparedInputs& inputs) {
    const auto t0 = std::chrono::steady_clock::now();
    const BuiltAttack built = build_attack(cfg, inputs.queries, *inputs.encoder);
    return evaluate_built(cfg, inputs, built, seconds_since(t0));
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    const PreparedInputs inputs = prepare_inputs(cfg);
    return run_experiment_prepared(cfg, inputs);
}

void save_outcomes(const std::vector<QueryOutcome>& outcomes, const std::string& path) {
    std::ostringstream out;
    for (const auto& o : outcomes) {
        const json line = {
            {"method", o.method},       {"defense", o.defense},
            {"k", o.k},                 {"query_id", o.query_id},
            {"retrieved_adversarial", o.retrieved_adversarial},
            {"success", o.success},     {"response", o.response},
            {"error", o.error},
        };
        out << line.dump() << '\n';
    }
    write_file(path, out.str());
}

json config_to_json(const ExperimentConfig& cfg) {
    json doc = {
        {"corpus_path", cfg.corpus_path},
        {"query_path", cfg.query_path},
        {"transfer_query_path", cfg.transfer_query_path},
        {"method", to_string(cfg.method)},
        {"objective", to_string(cfg.objective)},
        {"payload_variant", cfg.payload_variant},
        {"m", cfg.m},
        {"n", cfg.n},
        {"t", cfg.t},
        {"l", cfg.l},
        {"k_values", cfg.k_values},
        {"metric", to_string(cfg.metric)},
        {"init", to_string(cfg.init)},
        {"candidate_pool", cfg.candidate_pool},
        {"positions_per_iter", cfg.positions_per_iter},
        {"jamming_5x", cfg.jamming_5x},
        {"chunk_size", cfg.chunk_size},
        {"lm_spec", cfg.lm_spec},
        {"asr_mode", to_string(cfg.asr_mode)},
        {"defense_paraphrase", cfg.defense_paraphrase},
        {"defense_window", cfg.defense_window},
        {"rng_seed", cfg.rng_seed},
        {"attack_id", cfg.attack_id},
        {"encoder",
         {{"table_path", cfg.encoder.table_path},
          {"seed", cfg.encoder.seed},
          {"dimension", cfg.encoder.dimension},
          {"vocab_cap", cfg.encoder.vocab_cap}}},
        // api_key_env names the variable holding the token; the token
        // itself is read at request time and never written anywhere.
        {"remote",
         {{"base_url", cfg.remote.base_url},
          {"path", cfg.remote.path},
          {"model", cfg.remote.model},
          {"api_key_env", cfg.remote.api_key_env},
          {"temperature", cfg.remote.temperature},
          {"timeout_ms", cfg.remote.timeout_ms},
          {"max_retries", cfg.remote.max_retries},
          {"backoff_ms", cfg.remote.backoff_ms},
          {"max_in_flight", cfg.remote.max_in_flight}}},
    };
    if (cfg.custom_payload) {
        doc["custom_payload"] = {
            {"text", cfg.custom_payload->text},
            {"target_marker", cfg.custom_payload->target_marker},
            {"instructed_response", cfg.custom_payload->instructed_response},
        };
    } else {
        doc["custom_payload"] = nullptr;
    }
    return doc;
}

ExperimentConfig config_from_json(const json& doc) {
    ExperimentConfig cfg;
    cfg.corpus_path = doc.value("corpus_path", cfg.corpus_path);
    cfg.query_path = doc.value("query_path", cfg.query_path);
    cfg.transfer_query_path = doc.value("transfer_query_path", cfg.transfer_query_path);
    if (doc.contains("method")) {
        cfg.method = attack_method_from_string(doc.at("method").get<std::string>());
    }
    if (doc.contains("objective")) {
        cfg.objective =
            attack_objective_from_string(doc.at("objective").get<std::string>());
    }
    cfg.payload_variant = doc.value("payload_variant", cfg.payload_variant);
    if (doc.contains("custom_payload") && !doc.at("custom_payload").is_null()) {
        const auto& p = doc.at("custom_payload");
        cfg.custom_payload = custom_payload(p.at("text").get<std::string>(),
                                            p.value("target_marker", std::string()),
                                            p.value("instructed_response", std::string()));
    }
    cfg.m = doc.value("m", cfg.m);
    cfg.n = doc.value("n", cfg.n);
    cfg.t = doc.value("t", cfg.t);
    cfg.l = doc.value("l", cfg.l);
    if (doc.contains("k_values")) {
        cfg.k_values = doc.at("k_values").get<std::vector<int>>();
    }
    if (doc.contains("metric")) {
        cfg.metric = similarity_metric_from_string(doc.at("metric").get<std::string>());
    }
    if (doc.contains("init")) {
        cfg.init = prefix_init_from_string(doc.at("init").get<std::string>());
    }
    cfg.candidate_pool = doc.value("candidate_pool", cfg.candidate_pool);
    cfg.positions_per_iter = doc.value("positions_per_iter", cfg.positions_per_iter);
    cfg.jamming_5x = doc.value("jamming_5x", cfg.jamming_5x);
    cfg.chunk_size = doc.value("chunk_size", cfg.chunk_size);
    cfg.lm_spec = doc.value("lm_spec", cfg.lm_spec);
    if (doc.contains("asr_mode")) {
        cfg.asr_mode = asr_mode_from_string(doc.at("asr_mode").get<std::string>());
    }
    cfg.defense_paraphrase = doc.value("defense_paraphrase", cfg.defense_paraphrase);
    if (doc.contains("defense_window")) {
        cfg.defense_window = doc.at("defense_window").get<std::vector<int>>();
    }
    cfg.rng_seed = doc.value("rng_seed", cfg.rng_seed);
    cfg.attack_id = doc.value("attack_id", cfg.attack_id);
    if (doc.contains("encoder")) {
        const auto& e = doc.at("encoder");
        cfg.encoder.table_path = e.value("table_path", cfg.encoder.table_path);
        cfg.encoder.seed = e.value("seed", cfg.encoder.seed);
        cfg.encoder.dimension = e.value("dimension", cfg.encoder.dimension);
        cfg.encoder.vocab_cap = e.value("vocab_cap", cfg.encoder.vocab_cap);
    }
    if (doc.contains("remote")) {
        const auto& r = doc.at("remote");
        cfg.remote.base_url = r.value("base_url", cfg.remote.base_url);
        cfg.remote.path = r.value("path", cfg.remote.path);
        cfg.remote.model = r.value("model", cfg.remote.model);
        cfg.remote.api_key_env = r.value("api_key_env", cfg.remote.api_key_env);
        cfg.remote.temperature = r.value("temperature", cfg.remote.temperature);
        cfg.remote.timeout_ms = r.value("timeout_ms", cfg.remote.timeout_ms);
        cfg.remote.max_retries = r.value("max_retries", cfg.remote.max_retries);
        cfg.remote.backoff_ms = r.value("backoff_ms", cfg.remote.backoff_ms);
        cfg.remote.max_in_flight = r.value("max_in_flight", cfg.remote.max_in_flight);
    }
    return cfg;
}

}  // namespace unicrag
