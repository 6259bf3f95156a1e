#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "unicrag/retriever.hpp"
#include "unicrag/rng.hpp"

using namespace unicrag;

namespace {

std::vector<std::string> vocab_n(std::size_t n) {
    std::vector<std::string> v{"[UNK]", "[MASK]"};
    for (std::size_t i = 2; i < n; ++i) v.push_back("v" + std::to_string(i));
    return v;
}

KnowledgeBase random_kb(SeededRng& rng, const MeanPoolingEncoder& enc,
                        std::size_t chunks, std::size_t vocab) {
    KnowledgeBase kb;
    for (std::size_t i = 0; i < chunks; ++i) {
        std::string text;
        const std::size_t len = 1 + rng.uniform_index(6);
        for (std::size_t j = 0; j < len; ++j) {
            if (j > 0) text.push_back(' ');
            text += "v" + std::to_string(2 + rng.uniform_index(vocab - 2));
        }
        TextChunk c;
        c.id = "c" + std::to_string(i);
        c.text = text;
        c.token_count = static_cast<int>(len);
        kb.chunks.push_back(std::move(c));
    }
    ensure_index(kb, enc);
    return kb;
}

// Reference ranking: full stable sort over every chunk.
std::vector<std::size_t> full_sort_oracle(const Embedding& q, const KnowledgeBase& kb,
                                          int k, SimilarityMetric metric) {
    std::vector<std::size_t> order(kb.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> scores(kb.size());
    for (std::size_t i = 0; i < kb.size(); ++i) {
        scores[i] = similarity(q, (*kb.embedding_index)[i], metric);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    order.resize(static_cast<std::size_t>(k));
    return order;
}

}  // namespace

TEST_CASE("topk matches a full-sort oracle on random instances") {
    SeededRng rng(7);
    const std::size_t vocab = 30;
    const auto enc = MeanPoolingEncoder::from_seed(vocab_n(vocab), 6, 11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(40);
        auto kb = random_kb(rng, enc, n, vocab);
        Embedding q(6);
        for (auto& v : q) v = rng.normal();
        const int k = 1 + static_cast<int>(rng.uniform_index(n));
        const auto metric = trial % 2 == 0 ? SimilarityMetric::DotProduct
                                           : SimilarityMetric::Cosine;
        CHECK(topk_indices(q, kb, k, metric) == full_sort_oracle(q, kb, k, metric));
    }
}

TEST_CASE("topk works identically with and without a precomputed index") {
    SeededRng rng(8);
    const std::size_t vocab = 20;
    const auto enc = MeanPoolingEncoder::from_seed(vocab_n(vocab), 5, 3);
    auto kb = random_kb(rng, enc, 25, vocab);
    KnowledgeBase no_index = kb;
    no_index.embedding_index.reset();
    Embedding q(5);
    for (auto& v : q) v = rng.normal();
    const auto with = topk_indices(q, kb, 7, SimilarityMetric::DotProduct);
    const auto without = topk_indices(q, no_index, 7, SimilarityMetric::DotProduct, &enc);
    CHECK(with == without);
    CHECK_THROWS_WITH_AS(topk_indices(q, no_index, 7, SimilarityMetric::DotProduct),
                         "retrieval without index requires an encoder",
                         std::logic_error);
}

TEST_CASE("top-k rankings nest as k grows") {
    SeededRng rng(9);
    const std::size_t vocab = 25;
    const auto enc = MeanPoolingEncoder::from_seed(vocab_n(vocab), 4, 19);
    auto kb = random_kb(rng, enc, 30, vocab);
    Embedding q(4);
    for (auto& v : q) v = rng.normal();
    std::vector<std::size_t> prev;
    for (int k = 1; k <= 30; ++k) {
        auto cur = topk_indices(q, kb, k, SimilarityMetric::DotProduct);
        REQUIRE(cur.size() == static_cast<std::size_t>(k));
        // the previous ranking must be a prefix of the current one
        CHECK(std::equal(prev.begin(), prev.end(), cur.begin()));
        prev = std::move(cur);
    }
}

TEST_CASE("ties resolve to the lower chunk index") {
    const auto enc = MeanPoolingEncoder::from_seed(vocab_n(6), 4, 2);
    KnowledgeBase kb;
    for (int i = 0; i < 4; ++i) {
        kb.chunks.push_back({"c" + std::to_string(i), "v2 v3", 2, Provenance::Clean, ""});
    }
    ensure_index(kb, enc);
    const auto q = enc.encode_text("v2");
    CHECK(topk_indices(q, kb, 3, SimilarityMetric::DotProduct) ==
          std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("retrieve_topk returns ids, scores and the query id") {
    const auto enc = MeanPoolingEncoder::from_seed(vocab_n(8), 4, 21);
    KnowledgeBase kb;
    kb.chunks.push_back({"a", "v2 v3", 2, Provenance::Clean, ""});
    kb.chunks.push_back({"b", "v4 v5", 2, Provenance::Clean, ""});
    kb.chunks.push_back({"c", "v6 v7", 2, Provenance::Clean, ""});
    const auto res = retrieve_topk("v2 v3", kb, 2, SimilarityMetric::DotProduct, enc, "q9");
    CHECK(res.query_id == "q9");
    CHECK(res.k == 2);
    REQUIRE(res.ranked.size() == 2);
    CHECK(res.ranked[0].chunk_id == "a");
    CHECK(res.ranked[0].score >= res.ranked[1].score);
    CHECK(res.ranked[0].score ==
          doctest::Approx(dot(enc.encode_text("v2 v3"), enc.encode_text("v2 v3"))));
}

TEST_CASE("retrieval rejects bad arguments") {
    const auto enc = MeanPoolingEncoder::from_seed(vocab_n(6), 3, 1);
    KnowledgeBase empty;
    Embedding q(3, 1.0);
    CHECK_THROWS_WITH_AS(topk_indices(q, empty, 1, SimilarityMetric::DotProduct, &enc),
                         "retrieval over empty knowledge base", std::runtime_error);
    KnowledgeBase kb;
    kb.chunks.push_back({"a", "v2", 1, Provenance::Clean, ""});
    ensure_index(kb, enc);
    CHECK_THROWS_WITH_AS(topk_indices(q, kb, 0, SimilarityMetric::DotProduct),
                         "k must be positive", std::invalid_argument);
    CHECK_THROWS_WITH_AS(topk_indices(q, kb, 2, SimilarityMetric::DotProduct),
                         "k exceeds knowledge base size", std::invalid_argument);
}

TEST_CASE("batch_retrieve preserves query order") {
    const auto enc = MeanPoolingEncoder::from_seed(vocab_n(8), 4, 33);
    KnowledgeBase kb;
    kb.chunks.push_back({"a", "v2", 1, Provenance::Clean, ""});
    kb.chunks.push_back({"b", "v3", 1, Provenance::Clean, ""});
    QuerySet qs;
    qs.queries = {{"q1", "v2"}, {"q2", "v3"}};
    const auto results = batch_retrieve(qs, kb, 1, SimilarityMetric::DotProduct, enc);
    REQUIRE(results.size() == 2);
    CHECK(results[0].query_id == "q1");
    CHECK(results[0].ranked[0].chunk_id == "a");
    CHECK(results[1].query_id == "q2");
    CHECK(results[1].ranked[0].chunk_id == "b");
}
