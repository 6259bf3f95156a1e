#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unicrag/tokenizer.hpp"

namespace unicrag {

using Embedding = std::vector<double>;

enum class SimilarityMetric { DotProduct, Cosine };

std::string to_string(SimilarityMetric metric);
SimilarityMetric similarity_metric_from_string(const std::string& name);

double dot(const Embedding& u, const Embedding& v);
double l2_norm(const Embedding& v);
double similarity(const Embedding& u, const Embedding& v, SimilarityMetric metric);

// Dense row-major token embedding matrix. Rows align with tokenizer ids.
// Every row must be finite and not all-zero.
class EmbeddingTable {
public:
    EmbeddingTable(std::size_t dimension, std::size_t rows, std::vector<double> data);

    // Seeded table: one unit-variance Gaussian row per vocabulary entry,
    // in vocabulary order. Reserved rows ([UNK], [MASK]) are constant 1e-3
    // so they stay near-neutral under mean pooling.
    static EmbeddingTable generate(std::size_t vocab_size, std::size_t dimension,
                                   std::uint64_t seed);

    std::size_t dimension() const { return dimension_; }
    std::size_t rows() const { return rows_; }
    const double* row(TokenId id) const;
    std::optional<std::uint64_t> seed;  // set when generated

private:
    std::size_t dimension_;
    std::size_t rows_;
    std::vector<double> data_;
};

// Encoder interface. encode_query and encode_text are distinct entry
// points so a dual-encoder back end can slot in later; the mean-pooling
// implementation shares one path for both.
class TextEncoder {
public:
    virtual ~TextEncoder() = default;
    virtual std::size_t dimension() const = 0;
    virtual Embedding encode_text(const std::string& text) const = 0;
    virtual Embedding encode_query(const std::string& query) const {
        return encode_text(query);
    }
    virtual int token_count(const std::string& text) const = 0;
};

class MeanPoolingEncoder : public TextEncoder {
public:
    MeanPoolingEncoder(Tokenizer tokenizer, EmbeddingTable table);

    static MeanPoolingEncoder from_seed(std::vector<std::string> vocabulary,
                                        std::size_t dimension, std::uint64_t seed);
    static MeanPoolingEncoder from_table_file(const std::string& path);
    void save_table(const std::string& path) const;

    std::size_t dimension() const override { return table_.dimension(); }
    Embedding encode(const std::vector<TokenId>& tokens) const;
    Embedding encode_text(const std::string& text) const override;
    int token_count(const std::string& text) const override;

    const Tokenizer& tokenizer() const { return tokenizer_; }
    const EmbeddingTable& table() const { return table_; }

private:
    Tokenizer tokenizer_;
    EmbeddingTable table_;
};

// First-order score of substituting each vocabulary token at `position`:
//   score(v) = (row(v) - row(tokens[position])) . gradient / tokens.size()
// Under DotProduct this equals the exact objective change of the swap.
std::vector<double> substitution_gain(const EmbeddingTable& table,
                                      const std::vector<TokenId>& tokens,
                                      std::size_t position,
                                      const Embedding& gradient);

// Gradient of (1/|C|) sum_q Sim(current, q) with respect to `current`.
// DotProduct: the mean of the cluster embeddings. Cosine: quotient rule.
Embedding objective_gradient(const std::vector<Embedding>& cluster_embeddings,
                             SimilarityMetric metric, const Embedding& current);

}  // namespace unicrag
