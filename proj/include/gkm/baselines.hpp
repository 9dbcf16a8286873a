#pragma once

#include <cstdint>
#include <span>

#include "gkm/config.hpp"
#include "gkm/dataset.hpp"
#include "gkm/graph_kmeans.hpp"
#include "gkm/knn_graph.hpp"
#include "gkm/metrics_trace.hpp"
#include "gkm/partition.hpp"

namespace gkm {

// Batch k-means: alternate nearest-centroid assignment (ties: lowest cluster
// id) and centroid update until assignments are stable or max_iter batches.
// A cluster left empty is repaired by donating the sample farthest from its
// own centroid (from any cluster of size >= 2).
Partition lloyd_kmeans(const Dataset& data, std::uint32_t k, Partition init,
                       std::uint32_t max_iter, MetricsTrace* trace = nullptr);

// Mean squared distance of samples to their cluster centroid, from a direct
// scan. Throws std::invalid_argument on an empty cluster.
double distortion(const Dataset& data, const Partition& part);

// Exact kappa-nearest-neighbor lists by full pairwise comparison (each
// unordered pair evaluated once). Requires 1 <= kappa <= n - 1.
KnnGraph brute_force_knn(const Dataset& data, std::uint32_t kappa);

enum class RecallMode {
    anywhere_in_list,  // exact rank-1 neighbor found anywhere in the row
    top1_only,         // exact rank-1 neighbor is the row's first entry
};

// Fraction of rows (all rows, or `subset`) whose exact nearest neighbor the
// approximate graph recovers. Graphs must agree on n.
double recall_at_1(const KnnGraph& approx, const KnnGraph& exact,
                   std::span<const std::uint32_t> subset = {},
                   RecallMode mode = RecallMode::anywhere_in_list);

// Fraction of samples whose exact rank-th neighbor (1-based) lands in the
// same cluster. Requires 1 <= rank <= exact.kappa().
double co_membership_rate(const Partition& part, const KnnGraph& exact, std::uint32_t rank);

// Incremental composite-objective k-means with every other cluster as a move
// candidate (the graph-free reference). Same initialization, visit order,
// acceptance rule and stopping rule as the graph-driven optimizer.
Partition boost_kmeans(const Dataset& data, std::uint32_t k, const Config& config,
                       MetricsTrace* trace = nullptr, GkMeansStats* stats = nullptr);

}  // namespace gkm
