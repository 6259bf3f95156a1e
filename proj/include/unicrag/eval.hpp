#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "unicrag/attack.hpp"
#include "unicrag/clustering.hpp"
#include "unicrag/corpus.hpp"
#include "unicrag/encoder.hpp"
#include "unicrag/generation.hpp"
#include "unicrag/payloads.hpp"

namespace unicrag {

enum class AttackMethod {
    UnicRag,
    UnicRagUniform,  // uniform partition, otherwise identical pipeline
    Base,            // balanced clustering without greedy initialization
    ExtendedCorpusPoisoning,
    CorpusPoisoning,
    PerQueryJamming,
    PromptInjectionOnly,
};

std::string to_string(AttackMethod method);
AttackMethod attack_method_from_string(const std::string& name);

enum class AsrMode { Substring, DenialJudge };

std::string to_string(AsrMode mode);
AsrMode asr_mode_from_string(const std::string& name);

struct EncoderSpec {
    std::string table_path;  // load when set, otherwise generate from seed
    std::uint64_t seed = 17;
    std::size_t dimension = 64;
    std::size_t vocab_cap = 50000;
};

struct ExperimentConfig {
    std::string corpus_path;
    std::string query_path;
    std::string transfer_query_path;

    AttackMethod method = AttackMethod::UnicRag;
    AttackObjective objective = AttackObjective::MaliciousLink;
    std::string payload_variant = "more_information";
    std::optional<Payload> custom_payload;

    std::size_t m = 500;
    std::size_t n = 100;
    int t = 500;
    int l = 50;
    std::vector<int> k_values{5, 10, 20};
    SimilarityMetric metric = SimilarityMetric::DotProduct;
    PrefixInit init = PrefixInit::GreedyFromPrevious;
    int candidate_pool = 0;
    int positions_per_iter = 1;
    bool jamming_5x = false;

    EncoderSpec encoder;
    std::size_t chunk_size = 100;

    std::string lm_spec = "mock:instruction-following";
    RemoteChatConfig remote;
    AsrMode asr_mode = AsrMode::Substring;

    bool defense_paraphrase = false;
    std::vector<int> defense_window;

    std::uint64_t rng_seed = 1;
    std::string attack_id;  // defaults to the method name
};

// Fraction of queries whose top-k contains at least one adversarial
// chunk. Errors when the knowledge base has no adversarial chunks.
double retrieval_success_rate(const QuerySet& queries, const KnowledgeBase& corrupted,
                              int k, SimilarityMetric metric,
                              const TextEncoder& encoder);

struct QueryOutcome {
    std::string method;
    std::string defense;
    int k = 0;
    std::string query_id;
    bool retrieved_adversarial = false;
    bool success = false;
    std::string response;
    std::string error;
};

// Retrieve, assemble, generate, and score each query. Substring mode
// checks the payload's target marker against the response byte-for-byte
// (an unset marker never matches); DenialJudge counts a NO judgment as
// success. Adapter errors are recorded per query and count as failures.
double attack_success_rate(const QuerySet& queries, const KnowledgeBase& corrupted,
                           int k, SimilarityMetric metric,
                           const TextEncoder& encoder, LMAdapter& adapter,
                           const std::optional<Payload>& payload, AsrMode mode,
                           std::vector<QueryOutcome>* outcomes = nullptr);

// Paraphrases every query via the adapter, keeping ids. Per-query errors
// leave the original text in place and are counted.
struct ParaphraseResult {
    QuerySet queries;
    std::size_t errors = 0;
};
ParaphraseResult paraphrase_defense(LMAdapter& adapter, const QuerySet& queries);

struct PreparedInputs {
    KnowledgeBase kb;
    QuerySet queries;  // sampled attack-training queries
    std::optional<QuerySet> transfer;
    std::shared_ptr<MeanPoolingEncoder> encoder;
    nlohmann::json input_hashes;  // file fingerprints when loaded from disk
};

// Loads corpus documents (chunking them), loads and samples m queries
// with the experiment seed, and builds the encoder from its EncoderSpec.
PreparedInputs prepare_inputs(const ExperimentConfig& cfg);

struct BuiltAttack {
    std::vector<AdversarialText> gamma;
    std::optional<Partition> partition;
    std::optional<Payload> payload;  // unset for corpus poisoning
    std::string attack_id;
};

BuiltAttack build_attack(const ExperimentConfig& cfg, const QuerySet& queries,
                         const MeanPoolingEncoder& encoder);

struct ExperimentReport {
    nlohmann::json body;    // deterministic: no timestamps
    nlohmann::json timing;  // wall-clock sidecar
    std::vector<QueryOutcome> outcomes;
};

// Injects the built texts and measures every configured row. Split from
// build_attack so a saved gamma file can be re-evaluated on its own.
ExperimentReport evaluate_built(const ExperimentConfig& cfg,
                                const PreparedInputs& inputs,
                                const BuiltAttack& built,
                                double attack_seconds = 0.0);

ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport run_experiment_prepared(const ExperimentConfig& cfg,
                                         const PreparedInputs& inputs);

// RSR/ASR of previously built adversarial texts against a query set that
// must be id-disjoint from the attack-training queries.
nlohmann::json transfer_evaluate(const QuerySet& attack_queries,
                                 const QuerySet& transfer_queries,
                                 const KnowledgeBase& corrupted,
                                 const std::vector<int>& k_values,
                                 SimilarityMetric metric, const TextEncoder& encoder,
                                 LMAdapter& adapter,
                                 const std::optional<Payload>& payload, AsrMode mode,
                                 std::vector<QueryOutcome>* outcomes = nullptr);

// One metrics row per k: {"rsr": ..., "asr": ...}. Asserts RSR is
// non-decreasing in k (guaranteed by top-k nesting).
nlohmann::json metrics_over_k(const QuerySet& queries, const KnowledgeBase& corrupted,
                              const std::vector<int>& k_values,
                              SimilarityMetric metric, const TextEncoder& encoder,
                              LMAdapter& adapter,
                              const std::optional<Payload>& payload, AsrMode mode,
                              const std::string& method_name,
                              const std::string& defense_name,
                              std::vector<QueryOutcome>* outcomes = nullptr);

void save_outcomes(const std::vector<QueryOutcome>& outcomes, const std::string& path);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& doc);

}  // namespace unicrag
