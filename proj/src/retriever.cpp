#include "unicrag/retriever.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace unicrag {

std::vector<std::size_t> topk_indices(const Embedding& query_embedding,
                                      const KnowledgeBase& kb, int k,
                                      SimilarityMetric metric,
                                      const TextEncoder* encoder) {
    if (kb.chunks.empty()) {
        throw std::runtime_error("retrieval over empty knowledge base");
    }
    if (k <= 0) throw std::invalid_argument("k must be positive");
    if (static_cast<std::size_t>(k) > kb.chunks.size()) {
        throw std::invalid_argument("k exceeds knowledge base size");
    }
    std::vector<double> scores(kb.chunks.size());
    if (kb.embedding_index) {
        if (kb.embedding_index->size() != kb.chunks.size()) {
            throw std::logic_error("embedding index row count mismatch");
        }
        for (std::size_t i = 0; i < scores.size(); ++i) {
            scores[i] = similarity(query_embedding, (*kb.embedding_index)[i], metric);
        }
    } else {
        if (encoder == nullptr) {
            throw std::logic_error("retrieval without index requires an encoder");
        }
        for (std::size_t i = 0; i < scores.size(); ++i) {
            scores[i] = similarity(query_embedding,
                                   encoder->encode_text(kb.chunks[i].text), metric);
        }
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    const auto better = [&scores](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + k, order.end(), better);
    order.resize(static_cast<std::size_t>(k));
    return order;
}

RetrievalResult retrieve_topk(const std::string& query, const KnowledgeBase& kb,
                              int k, SimilarityMetric metric,
                              const TextEncoder& encoder,
                              const std::string& query_id) {
    const Embedding qe = encoder.encode_query(query);
    const auto idx = topk_indices(qe, kb, k, metric, &encoder);
    RetrievalResult result;
    result.query_id = query_id;
    result.k = k;
    result.ranked.reserve(idx.size());
    for (const std::size_t i : idx) {
        double score;
        if (kb.embedding_index) {
            score = similarity(qe, (*kb.embedding_index)[i], metric);
        } else {
            score = similarity(qe, encoder.encode_text(kb.chunks[i].text), metric);
        }
        result.ranked.push_back({kb.chunks[i].id, score});
    }
    return result;
}

std::vector<RetrievalResult> batch_retrieve(const QuerySet& queries,
                                            const KnowledgeBase& kb, int k,
                                            SimilarityMetric metric,
                                            const TextEncoder& encoder) {
    std::vector<RetrievalResult> results;
    results.reserve(queries.size());
    for (const auto& q : queries.queries) {
        results.push_back(retrieve_topk(q.text, kb, k, metric, encoder, q.id));
    }
    return results;
}

}  // namespace unicrag
