#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gkm/dataset.hpp"
#include "gkm/partition.hpp"

namespace gkm {

using IdList = std::vector<std::uint32_t>;

// Splits `members` (>= 2 ids) into two non-empty halves by a 2-cluster run of
// the incremental composite-objective optimizer: two distinct seed samples,
// nearest-seed initial sides, then passes of immediate positive-gain flips
// until a pass accepts none (capped at 10 passes). Optionally accumulates the
// number of O(d) vector operations into *ops.
std::pair<IdList, IdList> bisect(const Dataset& data, std::span<const std::uint32_t> members,
                                 std::mt19937_64& gen, std::uint64_t* ops = nullptr);

// Equalizes two disjoint non-empty halves to within one sample by migrating
// samples from the larger side, smallest margin first, where margin is
// d(x, far-centroid) - d(x, own-centroid) against the halves' fixed
// centroids. Ties break on ascending id.
std::pair<IdList, IdList> balance_equal_size(const Dataset& data, IdList left, IdList right,
                                             std::uint64_t* ops = nullptr);

// Hierarchical bisecting initializer: starting from one cluster holding all
// samples, repeatedly pops the largest cluster (ties: lowest cluster id),
// bisects and equalizes it, until k clusters exist. The popped id keeps the
// left half; the right half takes the next fresh id. Requires 1 <= k <= n.
Partition two_means_tree(const Dataset& data, std::uint32_t k, std::mt19937_64& gen,
                         std::uint64_t* ops = nullptr);

}  // namespace gkm
