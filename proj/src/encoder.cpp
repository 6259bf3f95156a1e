#include "unicrag/encoder.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "unicrag/rng.hpp"
#include "unicrag/util.hpp"

using json = nlohmann::json;

namespace unicrag {

std::string to_string(SimilarityMetric metric) {
    return metric == SimilarityMetric::DotProduct ? "dot" : "cosine";
}

SimilarityMetric similarity_metric_from_string(const std::string& name) {
    if (name == "dot" || name == "dot-product") return SimilarityMetric::DotProduct;
    if (name == "cosine") return SimilarityMetric::Cosine;
    throw std::invalid_argument("unknown similarity metric: " + name);
}

double dot(const Embedding& u, const Embedding& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("dimension mismatch in similarity");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

double l2_norm(const Embedding& v) { return std::sqrt(dot(v, v)); }

double similarity(const Embedding& u, const Embedding& v, SimilarityMetric metric) {
    const double d = dot(u, v);
    if (metric == SimilarityMetric::DotProduct) return d;
    const double nu = l2_norm(u);
    const double nv = l2_norm(v);
    if (nu == 0.0 || nv == 0.0) {
        throw std::runtime_error("zero-norm vector in cosine similarity");
    }
    return d / (nu * nv);
}

EmbeddingTable::EmbeddingTable(std::size_t dimension, std::size_t rows,
                               std::vector<double> data)
    : dimension_(dimension), rows_(rows), data_(std::move(data)) {
    if (dimension_ == 0) throw std::invalid_argument("embedding dimension must be positive");
    if (data_.size() != dimension_ * rows_) {
        throw std::invalid_argument("embedding table size mismatch");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        bool all_zero = true;
        for (std::size_t c = 0; c < dimension_; ++c) {
            const double x = data_[r * dimension_ + c];
            if (!std::isfinite(x)) {
                throw std::invalid_argument("non-finite value in embedding table row " +
                                            std::to_string(r));
            }
            if (x != 0.0) all_zero = false;
        }
        if (all_zero) {
            throw std::invalid_argument("all-zero embedding table row " +
                                        std::to_string(r));
        }
    }
}

EmbeddingTable EmbeddingTable::generate(std::size_t vocab_size, std::size_t dimension,
                                        std::uint64_t seed) {
    if (vocab_size < 2) throw std::invalid_argument("vocabulary too small for table");
    std::vector<double> data(vocab_size * dimension);
    for (std::size_t c = 0; c < 2 * dimension; ++c) data[c] = 1e-3;
    SeededRng rng(seed);
    for (std::size_t c = 2 * dimension; c < data.size(); ++c) data[c] = rng.normal();
    EmbeddingTable t(dimension, vocab_size, std::move(data));
    t.seed = seed;
    return t;
}

const double* EmbeddingTable::row(TokenId id) const {
    if (id >= rows_) throw std::out_of_range("token id outside embedding table");
    return data_.data() + static_cast<std::size_t>(id) * dimension_;
}

MeanPoolingEncoder::MeanPoolingEncoder(Tokenizer tokenizer, EmbeddingTable table)
    : tokenizer_(std::move(tokenizer)), table_(std::move(table)) {
    if (tokenizer_.vocab_size() != table_.rows()) {
        throw std::invalid_argument("vocabulary size does not match embedding table");
    }
}

MeanPoolingEncoder MeanPoolingEncoder::from_seed(std::vector<std::string> vocabulary,
                                                 std::size_t dimension,
                                                 std::uint64_t seed) {
    const std::size_t v = vocabulary.size();
    return MeanPoolingEncoder(Tokenizer(std::move(vocabulary)),
                              EmbeddingTable::generate(v, dimension, seed));
}

MeanPoolingEncoder MeanPoolingEncoder::from_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open embedding table: " + path);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("embedding table is empty: " + path);
    }
    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw std::runtime_error("invalid embedding table header: " +
                                 std::string(e.what()));
    }
    if (!header.contains("dimension")) {
        throw std::runtime_error("embedding table header lacks dimension");
    }
    const auto dimension = header.at("dimension").get<std::size_t>();
    std::vector<std::string> vocab;
    std::vector<double> data;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception&) {
            throw std::runtime_error("invalid embedding table record at line " +
                                     std::to_string(line_no));
        }
        vocab.push_back(rec.at("token").get<std::string>());
        const auto& vec = rec.at("vector");
        if (vec.size() != dimension) {
            throw std::runtime_error("embedding row dimension mismatch at line " +
                                     std::to_string(line_no));
        }
        for (const auto& x : vec) data.push_back(x.get<double>());
    }
    EmbeddingTable table(dimension, vocab.size(), std::move(data));
    if (header.contains("seed") && !header.at("seed").is_null()) {
        table.seed = header.at("seed").get<std::uint64_t>();
    }
    return MeanPoolingEncoder(Tokenizer(std::move(vocab)), std::move(table));
}

void MeanPoolingEncoder::save_table(const std::string& path) const {
    std::ostringstream out;
    json header{{"dimension", table_.dimension()}, {"rows", table_.rows()}};
    if (table_.seed) header["seed"] = *table_.seed;
    out << header.dump() << '\n';
    for (std::size_t i = 0; i < tokenizer_.vocab_size(); ++i) {
        const double* r = table_.row(static_cast<TokenId>(i));
        json rec{{"token", tokenizer_.token(static_cast<TokenId>(i))},
                 {"vector", std::vector<double>(r, r + table_.dimension())}};
        out << rec.dump() << '\n';
    }
    write_file(path, out.str());
}

Embedding MeanPoolingEncoder::encode(const std::vector<TokenId>& tokens) const {
    if (tokens.empty()) throw std::runtime_error("cannot encode empty text");
    Embedding e(table_.dimension(), 0.0);
    for (const TokenId id : tokens) {
        const double* r = table_.row(id);
        for (std::size_t c = 0; c < e.size(); ++c) e[c] += r[c];
    }
    const double inv = 1.0 / static_cast<double>(tokens.size());
    for (double& x : e) x *= inv;
    return e;
}

Embedding MeanPoolingEncoder::encode_text(const std::string& text) const {
    return encode(tokenizer_.tokenize(text));
}

int MeanPoolingEncoder::token_count(const std::string& text) const {
    return static_cast<int>(Tokenizer::words(text).size());
}

std::vector<double> substitution_gain(const EmbeddingTable& table,
                                      const std::vector<TokenId>& tokens,
                                      std::size_t position,
                                      const Embedding& gradient) {
    if (position >= tokens.size()) {
        throw std::out_of_range("substitution position out of range");
    }
    if (gradient.size() != table.dimension()) {
        throw std::invalid_argument("gradient dimension mismatch");
    }
    const double inv_len = 1.0 / static_cast<double>(tokens.size());
    const double* cur = table.row(tokens[position]);
    double cur_proj = 0.0;
    for (std::size_t c = 0; c < gradient.size(); ++c) cur_proj += cur[c] * gradient[c];
    std::vector<double> scores(table.rows());
    for (std::size_t v = 0; v < table.rows(); ++v) {
        const double* r = table.row(static_cast<TokenId>(v));
        double proj = 0.0;
        for (std::size_t c = 0; c < gradient.size(); ++c) proj += r[c] * gradient[c];
        scores[v] = (proj - cur_proj) * inv_len;
    }
    return scores;
}

Embedding objective_gradient(const std::vector<Embedding>& cluster_embeddings,
                             SimilarityMetric metric, const Embedding& current) {
    if (cluster_embeddings.empty()) {
        throw std::invalid_argument("objective gradient over empty cluster");
    }
    const std::size_t d = current.size();
    Embedding g(d, 0.0);
    const double inv_m = 1.0 / static_cast<double>(cluster_embeddings.size());
    if (metric == SimilarityMetric::DotProduct) {
        for (const auto& q : cluster_embeddings) {
            if (q.size() != d) throw std::invalid_argument("dimension mismatch in cluster");
            for (std::size_t c = 0; c < d; ++c) g[c] += q[c] * inv_m;
        }
        return g;
    }
    const double nx = l2_norm(current);
    if (nx == 0.0) throw std::runtime_error("zero-norm vector in cosine gradient");
    const double nx3 = nx * nx * nx;
    for (const auto& q : cluster_embeddings) {
        const double nq = l2_norm(q);
        if (nq == 0.0) throw std::runtime_error("zero-norm vector in cosine gradient");
        const double xq = dot(current, q);
        for (std::size_t c = 0; c < d; ++c) {
            g[c] += inv_m * (q[c] / (nx * nq) - xq * current[c] / (nx3 * nq));
        }
    }
    return g;
}

}  // namespace unicrag
