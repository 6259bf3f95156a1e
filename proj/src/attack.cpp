#include "unicrag/attack.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "unicrag/util.hpp"

using json = nlohmann::json;

namespace unicrag {

std::string to_string(PrefixInit init) {
    return init == PrefixInit::MaskTokens ? "mask" : "greedy";
}

PrefixInit prefix_init_from_string(const std::string& name) {
    if (name == "mask") return PrefixInit::MaskTokens;
    if (name == "greedy") return PrefixInit::GreedyFromPrevious;
    throw std::invalid_argument("unknown prefix init: " + name);
}

std::string AdversarialText::chunk_id() const {
    return "adv-" + attack_id + "-" + std::to_string(cluster_index);
}

std::string render_adversarial_text(const Tokenizer& tokenizer,
                                    const std::vector<TokenId>& prefix,
                                    const std::optional<Payload>& payload) {
    if (prefix.empty() && !payload) {
        throw std::invalid_argument("adversarial text needs a prefix or a payload");
    }
    if (prefix.empty()) return payload->text;
    std::string text = tokenizer.detokenize(prefix);
    if (payload) {
        text.push_back(' ');
        text += payload->text;
    }
    return text;
}

double attack_objective(const std::vector<Embedding>& cluster_embeddings,
                        const std::vector<TokenId>& tokens,
                        const MeanPoolingEncoder& encoder, SimilarityMetric metric) {
    if (cluster_embeddings.empty()) {
        throw std::invalid_argument("attack objective over empty cluster");
    }
    const Embedding e = encoder.encode(tokens);
    double s = 0.0;
    for (const auto& q : cluster_embeddings) s += similarity(e, q, metric);
    return s / static_cast<double>(cluster_embeddings.size());
}

AdversarialText optimize_prefix(
    const std::vector<Embedding>& cluster_embeddings,
    const std::optional<Payload>& payload, const MeanPoolingEncoder& encoder,
    SimilarityMetric metric, const OptimizerConfig& cfg,
    const std::optional<std::vector<TokenId>>& init_prefix) {
    if (cluster_embeddings.empty()) {
        throw std::invalid_argument("optimize_prefix over empty cluster");
    }
    if (cfg.iterations < 0) throw std::invalid_argument("iterations must be >= 0");
    if (cfg.prefix_length <= 0) {
        throw std::invalid_argument("prefix length must be positive");
    }
    if (cfg.positions_per_iter <= 0) {
        throw std::invalid_argument("positions_per_iter must be positive");
    }
    const auto l = static_cast<std::size_t>(cfg.prefix_length);
    const Tokenizer& tok = encoder.tokenizer();
    const EmbeddingTable& table = encoder.table();

    std::vector<TokenId> prefix;
    if (init_prefix) {
        if (init_prefix->size() != l) {
            throw std::invalid_argument("init prefix length mismatch");
        }
        prefix = *init_prefix;
    } else {
        prefix.assign(l, tok.mask_id());
    }
    std::vector<TokenId> full = prefix;
    if (payload) {
        const auto pt = tok.tokenize(payload->text);
        full.insert(full.end(), pt.begin(), pt.end());
    }
    const double inv_len = 1.0 / static_cast<double>(full.size());

    AdversarialText out;
    out.payload = payload;
    double obj = attack_objective(cluster_embeddings, full, encoder, metric);
    out.trace.push_back(obj);
    out.converged = false;

    const std::size_t vocab = table.rows();
    std::vector<double> proj(vocab);
    std::vector<std::size_t> positions(l);
    for (std::size_t p = 0; p < l; ++p) positions[p] = p;

    for (int iter = 0; iter < cfg.iterations; ++iter) {
        const Embedding current = encoder.encode(full);
        const Embedding g = objective_gradient(cluster_embeddings, metric, current);
        for (std::size_t v = 0; v < vocab; ++v) {
            const double* r = table.row(static_cast<TokenId>(v));
            double s = 0.0;
            for (std::size_t c = 0; c < g.size(); ++c) s += r[c] * g[c];
            proj[v] = s;
        }
        // Best candidate: highest projection among non-reserved tokens,
        // ties to the lower id. Every top-K pool contains it, so the
        // candidate_pool restriction cannot change the selected swap.
        TokenId best_v = 0;
        double best_proj = -std::numeric_limits<double>::infinity();
        const std::size_t first = 2;  // skip [UNK], [MASK]
        for (std::size_t v = first; v < vocab; ++v) {
            if (proj[v] > best_proj) {
                best_proj = proj[v];
                best_v = static_cast<TokenId>(v);
            }
        }
        if (vocab <= first) throw std::logic_error("no candidate tokens available");

        // Positions ordered by first-order gain, ties to the lower index.
        std::sort(positions.begin(), positions.end(),
                  [&](std::size_t a, std::size_t b) {
                      const double pa = proj[full[a]];
                      const double pb = proj[full[b]];
                      if (pa != pb) return pa < pb;
                      return a < b;
                  });
        int applied = 0;
        bool rejected = false;
        for (const std::size_t p : positions) {
            if (applied >= cfg.positions_per_iter) break;
            const double gain = (best_proj - proj[full[p]]) * inv_len;
            if (gain <= 0.0) break;
            const TokenId prev = full[p];
            full[p] = best_v;
            const double candidate_obj =
                attack_objective(cluster_embeddings, full, encoder, metric);
            if (candidate_obj > obj) {
                obj = candidate_obj;
                ++applied;
            } else {
                full[p] = prev;
                rejected = true;
                break;
            }
        }
        if (applied == 0) {
            // No first-order-improving swap: converged. A first-order
            // gain rejected by exact re-evaluation (possible under
            // Cosine) also ends the run, but is not convergence.
            out.converged = !rejected;
            break;
        }
        out.trace.push_back(obj);
    }

    out.prefix_tokens.assign(full.begin(), full.begin() + static_cast<long>(l));
    out.objective_value = obj;
    out.text = render_adversarial_text(tok, out.prefix_tokens, payload);
    return out;
}

std::vector<AdversarialText> optimize_for_partition(
    const QuerySet& queries, const Partition& partition,
    const std::optional<Payload>& payload, const MeanPoolingEncoder& encoder,
    SimilarityMetric metric, const OptimizerConfig& cfg,
    const std::string& attack_id) {
    std::map<std::string, const Query*> by_id;
    for (const auto& q : queries.queries) by_id[q.id] = &q;

    std::vector<AdversarialText> gamma;
    gamma.reserve(partition.clusters.size());
    std::optional<std::vector<TokenId>> previous_prefix;
    for (const auto& cluster : partition.clusters) {
        std::vector<Embedding> member_embs;
        member_embs.reserve(cluster.member_ids.size());
        for (const auto& id : cluster.member_ids) {
            const auto it = by_id.find(id);
            if (it == by_id.end()) {
                throw std::invalid_argument("cluster member not in query set: " + id);
            }
            member_embs.push_back(encoder.encode_query(it->second->text));
        }
        std::optional<std::vector<TokenId>> init;
        if (cfg.init == PrefixInit::GreedyFromPrevious && previous_prefix) {
            init = previous_prefix;
        }
        AdversarialText at =
            optimize_prefix(member_embs, payload, encoder, metric, cfg, init);
        at.attack_id = attack_id;
        at.cluster_index = cluster.index;
        previous_prefix = at.prefix_tokens;
        gamma.push_back(std::move(at));
    }
    return gamma;
}

std::vector<AdversarialText> unic_rag(const QuerySet& queries, const Payload& payload,
                                      const MeanPoolingEncoder& encoder,
                                      SimilarityMetric metric, std::size_t n,
                                      const OptimizerConfig& cfg,
                                      const std::string& attack_id) {
    const Partition partition =
        balanced_similarity_clustering(queries, encoder, metric, n, cfg.rng_seed);
    return optimize_for_partition(queries, partition, payload, encoder, metric, cfg,
                                  attack_id);
}

std::vector<AdversarialText> extended_corpus_poisoning(
    const QuerySet& queries, const Payload& payload,
    const MeanPoolingEncoder& encoder, SimilarityMetric metric, std::size_t n,
    const OptimizerConfig& cfg, const std::string& attack_id) {
    OptimizerConfig local = cfg;
    local.init = PrefixInit::MaskTokens;
    const Partition partition = kmeans_partition(queries, encoder, n, cfg.rng_seed);
    return optimize_for_partition(queries, partition, payload, encoder, metric, local,
                                  attack_id);
}

std::vector<AdversarialText> corpus_poisoning_baseline(
    const QuerySet& queries, const MeanPoolingEncoder& encoder,
    SimilarityMetric metric, std::size_t n, OptimizerConfig cfg,
    const std::optional<Payload>& budget_payload, const std::string& attack_id) {
    cfg.init = PrefixInit::MaskTokens;
    if (budget_payload) {
        cfg.prefix_length += encoder.token_count(budget_payload->text);
    }
    const Partition partition = kmeans_partition(queries, encoder, n, cfg.rng_seed);
    return optimize_for_partition(queries, partition, std::nullopt, encoder, metric,
                                  cfg, attack_id);
}

std::vector<AdversarialText> per_query_jamming_baseline(
    const QuerySet& queries, const Payload& payload,
    const MeanPoolingEncoder& encoder, SimilarityMetric metric,
    const std::string& attack_id) {
    if (queries.size() == 0) throw std::invalid_argument("empty query set");
    std::vector<AdversarialText> gamma;
    gamma.reserve(queries.size());
    int index = 0;
    for (const auto& q : queries.queries) {
        AdversarialText at;
        at.attack_id = attack_id;
        at.cluster_index = index++;
        at.prefix_tokens = encoder.tokenizer().tokenize(q.text);
        at.payload = payload;
        at.text = q.text + " " + payload.text;
        at.objective_value = similarity(encoder.encode_query(q.text),
                                        encoder.encode_text(at.text), metric);
        at.trace = {at.objective_value};
        at.converged = true;
        gamma.push_back(std::move(at));
    }
    return gamma;
}

std::vector<AdversarialText> prompt_injection_only(const Payload& payload,
                                                   std::size_t n,
                                                   const std::string& attack_id) {
    if (n == 0) throw std::invalid_argument("injection count must be positive");
    std::vector<AdversarialText> gamma;
    gamma.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        AdversarialText at;
        at.attack_id = attack_id;
        at.cluster_index = static_cast<int>(i);
        at.payload = payload;
        at.text = payload.text;
        at.converged = true;
        gamma.push_back(std::move(at));
    }
    return gamma;
}

std::vector<AdversarialRecord> to_records(const std::vector<AdversarialText>& gamma) {
    std::vector<AdversarialRecord> records;
    records.reserve(gamma.size());
    for (const auto& at : gamma) {
        records.push_back({at.chunk_id(), at.text, at.attack_id});
    }
    return records;
}

void save_gamma(const std::vector<AdversarialText>& gamma, const std::string& path) {
    std::ostringstream out;
    for (const auto& at : gamma) {
        json rec{{"attack_id", at.attack_id},
                 {"cluster_index", at.cluster_index},
                 {"text", at.text},
                 {"objective_value", at.objective_value},
                 {"converged", at.converged},
                 {"prefix_tokens", at.prefix_tokens}};
        if (at.payload) {
            rec["payload_variant"] = at.payload->variant;
            rec["objective"] = to_string(at.payload->objective);
            rec["target_marker"] = at.payload->target_marker;
            if (at.payload->objective == AttackObjective::Custom) {
                rec["payload"] = json{
                    {"text", at.payload->text},
                    {"target_marker", at.payload->target_marker},
                    {"instructed_response", at.payload->instructed_response}};
            }
        } else {
            rec["payload_variant"] = nullptr;
        }
        out << rec.dump() << '\n';
    }
    write_file(path, out.str());
}

std::vector<AdversarialText> load_gamma(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open adversarial set: " + path);
    std::vector<AdversarialText> gamma;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception&) {
            throw std::runtime_error("malformed adversarial record at line " +
                                     std::to_string(line_no));
        }
        AdversarialText at;
        at.attack_id = rec.at("attack_id").get<std::string>();
        at.cluster_index = rec.at("cluster_index").get<int>();
        at.text = rec.at("text").get<std::string>();
        at.objective_value = rec.value("objective_value", 0.0);
        at.converged = rec.value("converged", false);
        if (rec.contains("prefix_tokens")) {
            at.prefix_tokens = rec.at("prefix_tokens").get<std::vector<TokenId>>();
        }
        if (rec.contains("payload_variant") && !rec.at("payload_variant").is_null()) {
            const auto objective =
                attack_objective_from_string(rec.at("objective").get<std::string>());
            if (objective == AttackObjective::Custom) {
                const auto& p = rec.at("payload");
                at.payload = custom_payload(p.at("text").get<std::string>(),
                                            p.at("target_marker").get<std::string>(),
                                            p.value("instructed_response", ""));
            } else {
                at.payload = craft_payload(
                    objective, rec.at("payload_variant").get<std::string>());
            }
        }
        gamma.push_back(std::move(at));
    }
    return gamma;
}

}  // namespace unicrag
