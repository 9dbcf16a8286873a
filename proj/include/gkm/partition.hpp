#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gkm/dataset.hpp"

namespace gkm {

// Cluster assignment plus per-cluster sufficient statistics: the composite
// vector D_r (sum of member samples, double precision) and the member count
// n_r. ||D_r||^2 is cached and refreshed on every mutation so incremental
// move evaluation stays O(d).
//
// Empty clusters are representable (some consumers forbid them and throw).
class Partition {
public:
    // Throws std::invalid_argument when assignment.size() != data.size(),
    // k == 0, or any label is >= k.
    Partition(const Dataset& data, std::vector<std::uint32_t> assignment, std::uint32_t k);

    std::uint32_t k() const noexcept { return k_; }
    std::size_t size() const noexcept { return assignment_.size(); }

    std::uint32_t cluster_of(std::size_t i) const noexcept { return assignment_[i]; }
    std::span<const std::uint32_t> assignment() const noexcept { return assignment_; }

    std::span<const double> composite(std::uint32_t r) const noexcept {
        return {composites_.data() + static_cast<std::size_t>(r) * d_, d_};
    }
    double composite_sq_norm(std::uint32_t r) const noexcept { return composite_sq_norms_[r]; }
    std::size_t cluster_size(std::uint32_t r) const noexcept { return sizes_[r]; }

    // D_r / n_r. Throws std::invalid_argument on an empty cluster.
    std::vector<double> centroid(std::uint32_t r) const;

    // Member ids of every cluster, ascending within each cluster. O(n).
    std::vector<std::vector<std::uint32_t>> member_lists() const;

    // Reassigns sample i to cluster v, updating both clusters' statistics in
    // O(d). Throws std::invalid_argument when v is the current cluster, when
    // the move would empty the source cluster, or on out-of-range i/v.
    void move_sample(const Dataset& data, std::size_t i, std::uint32_t v);

private:
    std::uint32_t k_;
    std::size_t d_;
    std::vector<std::uint32_t> assignment_;
    std::vector<double> composites_;  // k x d, row-major
    std::vector<double> composite_sq_norms_;
    std::vector<std::size_t> sizes_;
};

}  // namespace gkm
