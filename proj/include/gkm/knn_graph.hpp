#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gkm {

struct NeighborEntry {
    std::uint32_t id;
    double sq_dist;
};

// Row ordering: ascending squared distance, ties by ascending id.
inline bool neighbor_less(const NeighborEntry& a, const NeighborEntry& b) noexcept {
    if (a.sq_dist != b.sq_dist) return a.sq_dist < b.sq_dist;
    return a.id < b.id;
}

// Fixed-width k-nearest-neighbor lists: n rows of exactly kappa entries,
// each row sorted by (sq_dist, id), self-free and duplicate-free.
class KnnGraph {
public:
    // entries.size() must equal n * kappa and every row must already satisfy
    // the invariants above; throws std::invalid_argument otherwise.
    KnnGraph(std::size_t n, std::uint32_t kappa, std::vector<NeighborEntry> entries);

    std::size_t size() const noexcept { return n_; }
    std::uint32_t kappa() const noexcept { return kappa_; }

    std::span<const NeighborEntry> row(std::size_t i) const noexcept {
        return {entries_.data() + i * kappa_, kappa_};
    }
    double row_max(std::size_t i) const noexcept {
        return entries_[i * kappa_ + kappa_ - 1].sq_dist;
    }
    bool contains(std::size_t i, std::uint32_t id) const noexcept;

    // Offers (id, sq_dist) to row i: inserted iff id is absent and sq_dist is
    // strictly below the row's current maximum; the current maximum entry is
    // evicted. Returns true when the row changed. id == i is rejected with
    // std::invalid_argument.
    bool insert(std::size_t i, std::uint32_t id, double sq_dist);

private:
    std::size_t n_;
    std::uint32_t kappa_;
    std::vector<NeighborEntry> entries_;  // n * kappa
};

}  // namespace gkm
