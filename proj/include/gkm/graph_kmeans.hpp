#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gkm/config.hpp"
#include "gkm/dataset.hpp"
#include "gkm/knn_graph.hpp"
#include "gkm/metrics_trace.hpp"
#include "gkm/partition.hpp"

namespace gkm {

// Deduplicated cluster ids, first-seen order. At most kappa entries, so a
// linear membership scan is fine.
class CandidateSet {
public:
    void clear() noexcept { ids_.clear(); }
    void insert(std::uint32_t cluster_id);
    bool contains(std::uint32_t cluster_id) const noexcept;
    bool empty() const noexcept { return ids_.empty(); }
    std::size_t size() const noexcept { return ids_.size(); }
    std::span<const std::uint32_t> ids() const noexcept { return ids_; }

private:
    std::vector<std::uint32_t> ids_;
};

// Clusters hosting sample i's graph neighbors, deduplicated, i's own cluster
// excluded. Order follows the neighbor list.
CandidateSet candidate_clusters(const Partition& part, const KnnGraph& graph, std::size_t i);
void candidate_clusters_into(const Partition& part, const KnnGraph& graph, std::size_t i,
                             CandidateSet& out);

struct MoveProposal {
    std::uint32_t target = 0;
    // boost: composite-objective gain; traditional: squared-centroid-distance
    // reduction. Positive in both modes.
    double gain = 0.0;
};

// Best admissible move of sample i into one of the candidate clusters, or
// nullopt when none improves. Ties on gain break toward the lowest cluster
// id; moves that would empty i's cluster are never proposed.
std::optional<MoveProposal> best_move(const Dataset& data, const Partition& part, std::size_t i,
                                      const CandidateSet& candidates, Mode mode);

struct GkMeansStats {
    std::uint64_t passes = 0;          // completed optimization passes
    std::uint64_t moves_accepted = 0;  // total accepted moves
    std::uint64_t distance_evals = 0;  // O(d) vector operations, init included
};

// Graph-driven incremental k-means. Initialization is the bisecting
// hierarchy (or `warm` when config.warm_start is set and warm != nullptr);
// each pass visits samples in a reseeded random order and greedily applies
// the best positive move per sample immediately. Stops after a pass with
// zero accepted moves or after config.max_iter passes. A trace row is
// emitted for the initial state (iteration 0) and after each pass.
Partition gk_means(const Dataset& data, std::uint32_t k, const KnnGraph& graph,
                   const Config& config, MetricsTrace* trace = nullptr,
                   GkMeansStats* stats = nullptr, const Partition* warm = nullptr);

}  // namespace gkm
