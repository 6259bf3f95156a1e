#pragma once

#include <string>
#include <vector>

#include "unicrag/corpus.hpp"
#include "unicrag/encoder.hpp"

namespace unicrag {

struct ScoredChunk {
    std::string chunk_id;
    double score = 0.0;
};

struct RetrievalResult {
    std::string query_id;
    std::vector<ScoredChunk> ranked;  // descending score, ties by chunk index
    int k = 0;
};

// Exact brute-force top-k over all chunks. Ties resolve to the lower
// chunk index. Errors when the knowledge base is empty or k exceeds its
// size. Uses the precomputed embedding index when present.
std::vector<std::size_t> topk_indices(const Embedding& query_embedding,
                                      const KnowledgeBase& kb, int k,
                                      SimilarityMetric metric,
                                      const TextEncoder* encoder = nullptr);

RetrievalResult retrieve_topk(const std::string& query, const KnowledgeBase& kb,
                              int k, SimilarityMetric metric,
                              const TextEncoder& encoder,
                              const std::string& query_id = "");

std::vector<RetrievalResult> batch_retrieve(const QuerySet& queries,
                                            const KnowledgeBase& kb, int k,
                                            SimilarityMetric metric,
                                            const TextEncoder& encoder);

}  // namespace unicrag
