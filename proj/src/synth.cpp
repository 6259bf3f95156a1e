#include "unicrag/synth.hpp"

#include <stdexcept>
#include <string>

#include "unicrag/rng.hpp"

namespace unicrag {

BlobBenchmark make_blob_benchmark(const BlobBenchmarkConfig& cfg) {
    if (cfg.n_blobs == 0 || cfg.dimension == 0 || cfg.natural_tokens_per_blob == 0) {
        throw std::invalid_argument("degenerate blob benchmark config");
    }
    SeededRng rng(cfg.seed);
    const std::size_t d = cfg.dimension;

    std::vector<std::vector<double>> centers(cfg.n_blobs, std::vector<double>(d));
    for (auto& c : centers) {
        for (double& x : c) x = rng.normal();
    }

    std::vector<std::string> vocab{Tokenizer::kUnknownToken, Tokenizer::kMaskToken};
    std::vector<double> rows(2 * d, 1e-3);
    std::vector<std::vector<std::string>> natural(cfg.n_blobs);
    for (std::size_t b = 0; b < cfg.n_blobs; ++b) {
        for (std::size_t i = 0; i < cfg.natural_tokens_per_blob; ++i) {
            vocab.push_back("b" + std::to_string(b) + "w" + std::to_string(i));
            natural[b].push_back(vocab.back());
            for (std::size_t k = 0; k < d; ++k) {
                rows.push_back(centers[b][k] + cfg.token_noise * rng.normal());
            }
        }
        for (std::size_t i = 0; i < cfg.amplified_tokens_per_blob; ++i) {
            vocab.push_back("b" + std::to_string(b) + "x" + std::to_string(i));
            const double beta = cfg.amplification_min +
                                (cfg.amplification_max - cfg.amplification_min) *
                                    rng.uniform01();
            for (std::size_t k = 0; k < d; ++k) rows.push_back(beta * centers[b][k]);
        }
    }

    BlobBenchmark bench;
    bench.encoder = std::make_shared<MeanPoolingEncoder>(
        Tokenizer(vocab), EmbeddingTable(d, vocab.size(), std::move(rows)));

    const auto draw_text = [&](std::size_t blob, std::size_t count) {
        std::string text;
        for (std::size_t i = 0; i < count; ++i) {
            if (i > 0) text.push_back(' ');
            text += natural[blob][rng.uniform_index(natural[blob].size())];
        }
        return text;
    };

    for (std::size_t i = 0; i < cfg.n_chunks; ++i) {
        const std::size_t blob = i % cfg.n_blobs;
        TextChunk chunk;
        chunk.id = "doc" + std::to_string(i);
        chunk.text = draw_text(blob, cfg.chunk_tokens);
        chunk.token_count = static_cast<int>(cfg.chunk_tokens);
        bench.corpus.chunks.push_back(std::move(chunk));
    }
    for (std::size_t j = 0; j < cfg.n_queries; ++j) {
        const std::size_t blob = j % cfg.n_blobs;
        bench.queries.queries.push_back(
            {"q" + std::to_string(j), draw_text(blob, cfg.query_tokens)});
        bench.query_blob.push_back(blob);
    }
    return bench;
}

void save_blob_benchmark(const BlobBenchmark& bench, const std::string& dir) {
    save_corpus(bench.corpus, dir + "/corpus.jsonl");
    save_queries(bench.queries, dir + "/queries.jsonl");
    bench.encoder->save_table(dir + "/table.jsonl");
}

}  // namespace unicrag
