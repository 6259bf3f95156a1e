#include "unicrag/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "unicrag/rng.hpp"
#include "unicrag/util.hpp"

using json = nlohmann::json;

namespace unicrag {

std::string to_string(PartitionMethod method) {
    switch (method) {
        case PartitionMethod::BalancedSimilarity: return "balanced-similarity";
        case PartitionMethod::Uniform: return "uniform";
        case PartitionMethod::KMeans: return "kmeans";
    }
    return "unknown";
}

PartitionMethod partition_method_from_string(const std::string& name) {
    if (name == "balanced-similarity") return PartitionMethod::BalancedSimilarity;
    if (name == "uniform") return PartitionMethod::Uniform;
    if (name == "kmeans") return PartitionMethod::KMeans;
    throw std::invalid_argument("unknown partition method: " + name);
}

namespace {

std::vector<Embedding> embed_queries(const QuerySet& queries,
                                     const TextEncoder& encoder) {
    std::vector<Embedding> embs;
    embs.reserve(queries.size());
    for (const auto& q : queries.queries) embs.push_back(encoder.encode_query(q.text));
    return embs;
}

void check_partition_args(const QuerySet& queries, std::size_t n) {
    if (queries.size() == 0) throw std::invalid_argument("empty query set");
    if (n == 0 || n > queries.size()) {
        throw std::invalid_argument("cluster count must be in [1, |Q|]");
    }
}

// Average similarity between a candidate embedding and cluster members.
// DotProduct distributes over the mean, so the centroid dot is exact;
// Cosine does not, so it averages literally.
double average_similarity(const Embedding& candidate,
                          const std::vector<std::size_t>& members,
                          const std::vector<Embedding>& embs,
                          const Embedding& centroid, SimilarityMetric metric) {
    if (metric == SimilarityMetric::DotProduct) return dot(candidate, centroid);
    double s = 0.0;
    for (const std::size_t m : members) {
        s += similarity(candidate, embs[m], SimilarityMetric::Cosine);
    }
    return s / static_cast<double>(members.size());
}

void add_member(std::vector<std::size_t>& members, Embedding& centroid,
                const std::vector<Embedding>& embs, std::size_t q) {
    const double old_n = static_cast<double>(members.size());
    members.push_back(q);
    const double inv = 1.0 / (old_n + 1.0);
    for (std::size_t c = 0; c < centroid.size(); ++c) {
        centroid[c] = (centroid[c] * old_n + embs[q][c]) * inv;
    }
}

Partition finish_partition(const QuerySet& queries,
                           const std::vector<Embedding>& embs,
                           std::vector<std::vector<std::size_t>> member_idx,
                           const std::vector<std::optional<std::size_t>>& seed_idx,
                           PartitionMethod method, std::uint64_t rng_seed) {
    Partition p;
    p.method = method;
    p.rng_seed = rng_seed;
    p.clusters.reserve(member_idx.size());
    const std::size_t d = embs.empty() ? 0 : embs[0].size();
    for (std::size_t i = 0; i < member_idx.size(); ++i) {
        QueryCluster c;
        c.index = static_cast<int>(i);
        c.centroid.assign(d, 0.0);
        for (const std::size_t q : member_idx[i]) {
            for (std::size_t k = 0; k < d; ++k) c.centroid[k] += embs[q][k];
        }
        if (!member_idx[i].empty()) {
            const double inv = 1.0 / static_cast<double>(member_idx[i].size());
            for (double& x : c.centroid) x *= inv;
        }
        const std::size_t seed_q = seed_idx[i].value_or(
            member_idx[i].empty() ? 0 : member_idx[i].front());
        c.seed_query_id = queries.queries[seed_q].id;
        c.member_ids.reserve(member_idx[i].size());
        for (const std::size_t q : member_idx[i]) {
            c.member_ids.push_back(queries.queries[q].id);
        }
        p.clusters.push_back(std::move(c));
    }
    return p;
}

}  // namespace

Partition balanced_similarity_clustering_with_seeds(
    const QuerySet& queries, const TextEncoder& encoder, SimilarityMetric metric,
    const std::vector<std::size_t>& seed_indices) {
    const std::size_t n = seed_indices.size();
    check_partition_args(queries, n);
    const auto embs = embed_queries(queries, encoder);
    const std::size_t total = queries.size();
    const std::size_t quota = total / n;

    std::vector<bool> assigned(total, false);
    for (const std::size_t s : seed_indices) {
        if (s >= total) throw std::invalid_argument("seed index out of range");
        if (assigned[s]) throw std::invalid_argument("duplicate seed index");
        assigned[s] = true;
    }

    std::vector<std::vector<std::size_t>> members(n);
    std::vector<Embedding> centroids(n);
    for (std::size_t i = 0; i < n; ++i) {
        members[i] = {seed_indices[i]};
        centroids[i] = embs[seed_indices[i]];
    }

    // Quota growth, clusters in index order.
    for (std::size_t i = 0; i < n; ++i) {
        while (members[i].size() < quota) {
            std::size_t best_q = total;
            double best_sim = -std::numeric_limits<double>::infinity();
            for (std::size_t q = 0; q < total; ++q) {
                if (assigned[q]) continue;
                const double s = average_similarity(embs[q], members[i], embs,
                                                    centroids[i], metric);
                if (s > best_sim) {
                    best_sim = s;
                    best_q = q;
                }
            }
            if (best_q == total) {
                throw std::logic_error("quota growth exhausted the query set");
            }
            assigned[best_q] = true;
            add_member(members[i], centroids[i], embs, best_q);
        }
    }

    // Remaining queries go to the most similar cluster, growth uncapped.
    for (std::size_t q = 0; q < total; ++q) {
        if (assigned[q]) continue;
        std::size_t best_h = 0;
        double best_sim = -std::numeric_limits<double>::infinity();
        for (std::size_t h = 0; h < n; ++h) {
            const double s =
                average_similarity(embs[q], members[h], embs, centroids[h], metric);
            if (s > best_sim) {
                best_sim = s;
                best_h = h;
            }
        }
        assigned[q] = true;
        add_member(members[best_h], centroids[best_h], embs, q);
    }

    std::vector<std::optional<std::size_t>> seeds(n);
    for (std::size_t i = 0; i < n; ++i) seeds[i] = seed_indices[i];
    return finish_partition(queries, embs, std::move(members), seeds,
                            PartitionMethod::BalancedSimilarity, 0);
}

Partition balanced_similarity_clustering(const QuerySet& queries,
                                         const TextEncoder& encoder,
                                         SimilarityMetric metric, std::size_t n,
                                         std::uint64_t rng_seed) {
    check_partition_args(queries, n);
    SeededRng rng(rng_seed);
    const auto seed_indices = rng.sample_without_replacement(queries.size(), n);
    Partition p = balanced_similarity_clustering_with_seeds(queries, encoder, metric,
                                                            seed_indices);
    p.rng_seed = rng_seed;
    return p;
}

Partition uniform_partition(const QuerySet& queries, const TextEncoder& encoder,
                            std::size_t n, std::uint64_t rng_seed) {
    check_partition_args(queries, n);
    const auto embs = embed_queries(queries, encoder);
    const std::size_t total = queries.size();
    std::vector<std::size_t> order(total);
    for (std::size_t i = 0; i < total; ++i) order[i] = i;
    SeededRng rng(rng_seed);
    rng.shuffle(order);

    const std::size_t quota = total / n;
    const std::size_t remainder = total % n;
    std::vector<std::vector<std::size_t>> members(n);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < quota; ++j) members[i].push_back(order[pos++]);
    }
    for (std::size_t i = 0; i < remainder; ++i) members[i].push_back(order[pos++]);
    for (auto& m : members) std::sort(m.begin(), m.end());

    return finish_partition(queries, embs, std::move(members),
                            std::vector<std::optional<std::size_t>>(n),
                            PartitionMethod::Uniform, rng_seed);
}

Partition kmeans_partition(const QuerySet& queries, const TextEncoder& encoder,
                           std::size_t n, std::uint64_t rng_seed,
                           std::size_t max_iters) {
    check_partition_args(queries, n);
    const auto embs = embed_queries(queries, encoder);
    const std::size_t total = queries.size();
    const std::size_t d = embs[0].size();

    SeededRng rng(rng_seed);
    const auto init = rng.sample_without_replacement(total, n);
    std::vector<Embedding> centroids;
    centroids.reserve(n);
    for (const std::size_t s : init) centroids.push_back(embs[s]);

    const auto sq_dist = [d](const Embedding& a, const Embedding& b) {
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double diff = a[k] - b[k];
            s += diff * diff;
        }
        return s;
    };
    const auto assign_all = [&](std::vector<std::size_t>& assign) {
        for (std::size_t q = 0; q < total; ++q) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < n; ++c) {
                const double dist = sq_dist(embs[q], centroids[c]);
                if (dist < best_d) {
                    best_d = dist;
                    best = c;
                }
            }
            assign[q] = best;
        }
    };
    // Moves the point farthest from its centroid into each empty cluster.
    const auto fix_empties = [&](std::vector<std::size_t>& assign) {
        while (true) {
            std::vector<std::size_t> sizes(n, 0);
            for (const std::size_t a : assign) ++sizes[a];
            std::size_t empty = n;
            for (std::size_t c = 0; c < n; ++c) {
                if (sizes[c] == 0) {
                    empty = c;
                    break;
                }
            }
            if (empty == n) return;
            std::size_t far_q = total;
            double far_d = -1.0;
            for (std::size_t q = 0; q < total; ++q) {
                if (sizes[assign[q]] < 2) continue;
                const double dist = sq_dist(embs[q], centroids[assign[q]]);
                if (dist > far_d) {
                    far_d = dist;
                    far_q = q;
                }
            }
            if (far_q == total) throw std::logic_error("cannot re-seed empty cluster");
            assign[far_q] = empty;
            centroids[empty] = embs[far_q];
        }
    };

    std::vector<std::size_t> assign(total);
    assign_all(assign);
    fix_empties(assign);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        std::vector<Embedding> sums(n, Embedding(d, 0.0));
        std::vector<std::size_t> counts(n, 0);
        for (std::size_t q = 0; q < total; ++q) {
            ++counts[assign[q]];
            for (std::size_t k = 0; k < d; ++k) sums[assign[q]][k] += embs[q][k];
        }
        for (std::size_t c = 0; c < n; ++c) {
            const double inv = 1.0 / static_cast<double>(counts[c]);
            for (std::size_t k = 0; k < d; ++k) centroids[c][k] = sums[c][k] * inv;
        }
        std::vector<std::size_t> next(total);
        assign_all(next);
        fix_empties(next);
        if (next == assign) break;
        assign = std::move(next);
    }

    std::vector<std::vector<std::size_t>> members(n);
    for (std::size_t q = 0; q < total; ++q) members[assign[q]].push_back(q);
    return finish_partition(queries, embs, std::move(members),
                            std::vector<std::optional<std::size_t>>(n),
                            PartitionMethod::KMeans, rng_seed);
}

ClusterStats cluster_stats(const Partition& partition, const QuerySet& queries,
                           const TextEncoder& encoder, SimilarityMetric metric) {
    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < queries.size(); ++i) {
        index_of[queries.queries[i].id] = i;
    }
    const auto embs = embed_queries(queries, encoder);

    ClusterStats stats;
    stats.min_size = std::numeric_limits<std::size_t>::max();
    double intra_sum = 0.0;
    std::size_t intra_count = 0;
    for (const auto& cluster : partition.clusters) {
        const std::size_t sz = cluster.member_ids.size();
        ++stats.size_histogram[sz];
        stats.min_size = std::min(stats.min_size, sz);
        stats.max_size = std::max(stats.max_size, sz);
        if (sz < 2) {
            stats.intra_similarity.push_back(std::nullopt);
            continue;
        }
        double s = 0.0;
        std::size_t pairs = 0;
        for (std::size_t a = 0; a < sz; ++a) {
            for (std::size_t b = a + 1; b < sz; ++b) {
                s += similarity(embs[index_of.at(cluster.member_ids[a])],
                                embs[index_of.at(cluster.member_ids[b])], metric);
                ++pairs;
            }
        }
        const double mean = s / static_cast<double>(pairs);
        stats.intra_similarity.push_back(mean);
        intra_sum += mean;
        ++intra_count;
    }
    if (intra_count > 0) {
        stats.mean_intra_similarity = intra_sum / static_cast<double>(intra_count);
    }
    return stats;
}

void save_partition(const Partition& partition, const std::string& path) {
    json doc;
    doc["method"] = to_string(partition.method);
    doc["rng_seed"] = partition.rng_seed;
    json clusters = json::array();
    for (const auto& c : partition.clusters) {
        clusters.push_back(json{{"index", c.index},
                                {"seed_query_id", c.seed_query_id},
                                {"member_ids", c.member_ids}});
    }
    doc["clusters"] = std::move(clusters);
    write_file(path, doc.dump(2) + "\n");
}

}  // namespace unicrag
