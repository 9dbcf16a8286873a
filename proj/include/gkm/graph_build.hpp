#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "gkm/config.hpp"
#include "gkm/dataset.hpp"
#include "gkm/knn_graph.hpp"
#include "gkm/partition.hpp"

namespace gkm {

// kappa distinct random neighbors per row (never the row itself), with true
// squared distances, rows sorted. Requires 1 <= kappa <= n - 1.
KnnGraph random_graph_init(const Dataset& data, std::uint32_t kappa, std::mt19937_64& gen);

// Offers the already-computed squared distance between samples i and j to
// both rows. Returns true when either row changed. i == j is rejected.
bool update_knn_list(KnnGraph& graph, std::size_t i, std::size_t j, double sq_dist);

// Compares every within-cluster sample pair once and offers each distance to
// both rows. Returns the number of row updates; accumulates O(d) operation
// counts into *ops when given.
std::size_t refine_within_clusters(const Dataset& data, const Partition& part, KnnGraph& graph,
                                   std::uint64_t* ops = nullptr);

struct BuildStats {
    std::uint64_t distance_evals = 0;  // O(d) vector operations, all phases
    std::uint64_t row_updates = 0;     // neighbor-list mutations during refinement
};

// Called after each construction iteration t (0-based) with the clustering
// and the graph state of that iteration.
using BuildObserver = std::function<void(std::uint32_t, const Partition&, const KnnGraph&)>;

// Self-bootstrapping approximate neighbor-graph construction: a random graph
// is alternately used to drive a cheap clustering (k0 = n / xi clusters, one
// optimization pass) and improved by exhaustive within-cluster comparisons,
// for config.tau rounds. config.{xi, tau, seed, mode, warm_start} are
// honored; requires n > xi so that k0 >= 1. tau == 0 returns the random
// initialization.
KnnGraph build_knn_graph(const Dataset& data, std::uint32_t kappa, const Config& config,
                         BuildStats* stats = nullptr, const BuildObserver& observer = {});

}  // namespace gkm
