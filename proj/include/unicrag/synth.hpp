#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "unicrag/corpus.hpp"
#include "unicrag/encoder.hpp"

namespace unicrag {

// Synthetic blob benchmark: n_blobs well-separated Gaussian token blobs,
// clean chunks and queries drawn from the natural tokens of one blob
// each. Every blob also carries a few amplified tokens (scaled copies of
// the blob center) that never occur in natural text; they give the
// optimizer high-projection directions that honest chunks cannot reach.
struct BlobBenchmarkConfig {
    std::size_t n_blobs = 20;
    std::size_t n_chunks = 10000;
    std::size_t n_queries = 200;
    std::size_t natural_tokens_per_blob = 30;
    std::size_t amplified_tokens_per_blob = 3;
    std::size_t chunk_tokens = 20;
    std::size_t query_tokens = 8;
    std::size_t dimension = 32;
    double token_noise = 0.3;
    double amplification_min = 2.0;
    double amplification_max = 3.0;
    std::uint64_t seed = 0;
};

struct BlobBenchmark {
    KnowledgeBase corpus;
    QuerySet queries;
    std::shared_ptr<MeanPoolingEncoder> encoder;
    std::vector<std::size_t> query_blob;  // ground-truth blob per query
};

BlobBenchmark make_blob_benchmark(const BlobBenchmarkConfig& cfg);

// Writes corpus.jsonl, queries.jsonl and table.jsonl into dir (which must
// exist) so the CLI can ingest the benchmark from files.
void save_blob_benchmark(const BlobBenchmark& bench, const std::string& dir);

}  // namespace unicrag
