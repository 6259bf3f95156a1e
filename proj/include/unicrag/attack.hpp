#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unicrag/clustering.hpp"
#include "unicrag/corpus.hpp"
#include "unicrag/encoder.hpp"
#include "unicrag/payloads.hpp"

namespace unicrag {

enum class PrefixInit { MaskTokens, GreedyFromPrevious };

std::string to_string(PrefixInit init);
PrefixInit prefix_init_from_string(const std::string& name);

struct OptimizerConfig {
    int iterations = 500;    // t
    int prefix_length = 50;  // l
    // 0 scores every non-reserved token; a positive value restricts the
    // candidate pool to the top-K tokens by gradient projection (a speed
    // knob; the best candidate is inside every top-K).
    int candidate_pool = 0;
    int positions_per_iter = 1;
    std::uint64_t rng_seed = 0;
    PrefixInit init = PrefixInit::MaskTokens;
};

// One optimized adversarial text: P^r (prefix_tokens) plus the fixed
// payload P^g. The rendered text is detokenize(prefix) + " " + payload
// text; corpus poisoning carries no payload and renders the prefix alone.
struct AdversarialText {
    std::string attack_id;
    int cluster_index = 0;
    std::vector<TokenId> prefix_tokens;
    std::optional<Payload> payload;
    std::string text;
    double objective_value = 0.0;
    std::vector<double> trace;  // objective after init and each iteration
    bool converged = false;

    std::string chunk_id() const;
};

std::string render_adversarial_text(const Tokenizer& tokenizer,
                                    const std::vector<TokenId>& prefix,
                                    const std::optional<Payload>& payload);

// Mean similarity of the encoded token sequence against the cluster
// query embeddings (the retrieval objective the optimizer climbs).
double attack_objective(const std::vector<Embedding>& cluster_embeddings,
                        const std::vector<TokenId>& tokens,
                        const MeanPoolingEncoder& encoder, SimilarityMetric metric);

// Greedy coordinate ascent over prefix positions. Every iteration scores
// all prefix positions with first-order substitution gains and applies
// the single best swap (positions_per_iter raises that cap), accepting
// only swaps whose exactly re-evaluated objective strictly improves.
// Stops early once no first-order-improving swap exists (converged).
// Reserved tokens never enter the candidate pool; payload positions are
// never mutated.
AdversarialText optimize_prefix(
    const std::vector<Embedding>& cluster_embeddings,
    const std::optional<Payload>& payload, const MeanPoolingEncoder& encoder,
    SimilarityMetric metric, const OptimizerConfig& cfg,
    const std::optional<std::vector<TokenId>>& init_prefix = std::nullopt);

// Runs the optimizer over every cluster in index order. Under
// GreedyFromPrevious, cluster i > 0 starts from cluster i-1's final
// prefix; cluster 0 starts from mask tokens.
std::vector<AdversarialText> optimize_for_partition(
    const QuerySet& queries, const Partition& partition,
    const std::optional<Payload>& payload, const MeanPoolingEncoder& encoder,
    SimilarityMetric metric, const OptimizerConfig& cfg,
    const std::string& attack_id);

// Balanced similarity clustering + per-cluster prefix optimization.
std::vector<AdversarialText> unic_rag(const QuerySet& queries, const Payload& payload,
                                      const MeanPoolingEncoder& encoder,
                                      SimilarityMetric metric, std::size_t n,
                                      const OptimizerConfig& cfg,
                                      const std::string& attack_id = "unic-rag");

// Same pipeline with kmeans clustering and mask initialization.
std::vector<AdversarialText> extended_corpus_poisoning(
    const QuerySet& queries, const Payload& payload,
    const MeanPoolingEncoder& encoder, SimilarityMetric metric, std::size_t n,
    const OptimizerConfig& cfg,
    const std::string& attack_id = "extended-corpus-poisoning");

// Optimization with an empty payload: the whole text is optimized prefix
// and the target marker is unset, so ASR is zero by construction. When a
// budget payload is given, its token count is added to the prefix length
// so rendered token counts match payload-carrying attacks.
std::vector<AdversarialText> corpus_poisoning_baseline(
    const QuerySet& queries, const MeanPoolingEncoder& encoder,
    SimilarityMetric metric, std::size_t n, OptimizerConfig cfg,
    const std::optional<Payload>& budget_payload = std::nullopt,
    const std::string& attack_id = "corpus-poisoning");

// One text per query: the query text concatenated with the payload, no
// optimization. Callers select the query budget beforehand.
std::vector<AdversarialText> per_query_jamming_baseline(
    const QuerySet& queries, const Payload& payload,
    const MeanPoolingEncoder& encoder, SimilarityMetric metric,
    const std::string& attack_id = "per-query-jamming");

// The payload injected as-is, n identical copies, no prefix.
std::vector<AdversarialText> prompt_injection_only(
    const Payload& payload, std::size_t n,
    const std::string& attack_id = "prompt-injection");

std::vector<AdversarialRecord> to_records(const std::vector<AdversarialText>& gamma);

void save_gamma(const std::vector<AdversarialText>& gamma, const std::string& path);
std::vector<AdversarialText> load_gamma(const std::string& path);

}  // namespace unicrag
