#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unicrag/corpus.hpp"
#include "unicrag/encoder.hpp"

namespace unicrag {

struct QueryCluster {
    int index = 0;
    std::string seed_query_id;
    std::vector<std::string> member_ids;
    Embedding centroid;  // mean of member embeddings
};

enum class PartitionMethod { BalancedSimilarity, Uniform, KMeans };

std::string to_string(PartitionMethod method);
PartitionMethod partition_method_from_string(const std::string& name);

struct Partition {
    std::vector<QueryCluster> clusters;
    PartitionMethod method = PartitionMethod::BalancedSimilarity;
    std::uint64_t rng_seed = 0;
};

// Balanced similarity-based clustering. Samples n distinct seed queries,
// grows each cluster in index order to the quota floor(|Q|/n) by
// repeatedly adding the unassigned query with the highest average
// similarity to the current members, then assigns every remaining query
// to the cluster with the highest average similarity. Ties break to the
// lowest query index, then the lowest cluster index. Every cluster ends
// with at least floor(|Q|/n) members.
Partition balanced_similarity_clustering(const QuerySet& queries,
                                         const TextEncoder& encoder,
                                         SimilarityMetric metric, std::size_t n,
                                         std::uint64_t rng_seed);

// Same algorithm with the seed queries pinned; used to enumerate seed
// choices exhaustively.
Partition balanced_similarity_clustering_with_seeds(
    const QuerySet& queries, const TextEncoder& encoder, SimilarityMetric metric,
    const std::vector<std::size_t>& seed_indices);

// Seeded shuffle, floor(|Q|/n) queries per cluster, remainder dealt one
// each to the first |Q| mod n clusters.
Partition uniform_partition(const QuerySet& queries, const TextEncoder& encoder,
                            std::size_t n, std::uint64_t rng_seed);

// Lloyd iterations on query embeddings (Euclidean), seeded initialization
// from n distinct queries; empty clusters are re-seeded from the point
// farthest from its assigned centroid. max_iters = 0 keeps the initial
// assignment.
Partition kmeans_partition(const QuerySet& queries, const TextEncoder& encoder,
                           std::size_t n, std::uint64_t rng_seed,
                           std::size_t max_iters = 100);

struct ClusterStats {
    std::map<std::size_t, std::size_t> size_histogram;
    // Mean pairwise member similarity per cluster; nullopt for singletons.
    std::vector<std::optional<double>> intra_similarity;
    std::optional<double> mean_intra_similarity;
    std::size_t min_size = 0;
    std::size_t max_size = 0;
};

ClusterStats cluster_stats(const Partition& partition, const QuerySet& queries,
                           const TextEncoder& encoder, SimilarityMetric metric);

void save_partition(const Partition& partition, const std::string& path);

}  // namespace unicrag
