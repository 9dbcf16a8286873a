#include "gkm/knn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gkm {

KnnGraph::KnnGraph(std::size_t n, std::uint32_t kappa, std::vector<NeighborEntry> entries)
    : n_(n), kappa_(kappa), entries_(std::move(entries)) {
    if (n_ == 0) throw std::invalid_argument("KnnGraph: need at least one row");
    if (kappa_ == 0) throw std::invalid_argument("KnnGraph: kappa must be >= 1");
    if (kappa_ > n_ - 1) {
        throw std::invalid_argument("KnnGraph: kappa=" + std::to_string(kappa_) +
                                    " exceeds n-1=" + std::to_string(n_ - 1));
    }
    if (entries_.size() != n_ * kappa_) {
        throw std::invalid_argument("KnnGraph: expected " + std::to_string(n_ * kappa_) +
                                    " entries, got " + std::to_string(entries_.size()));
    }
    for (std::size_t i = 0; i < n_; ++i) {
        const NeighborEntry* r = entries_.data() + i * kappa_;
        for (std::uint32_t p = 0; p < kappa_; ++p) {
            if (r[p].id >= n_) {
                throw std::invalid_argument("KnnGraph: row " + std::to_string(i) +
                                            " references id " + std::to_string(r[p].id) +
                                            " >= n");
            }
            if (r[p].id == i) {
                throw std::invalid_argument("KnnGraph: row " + std::to_string(i) +
                                            " lists itself");
            }
            if (!std::isfinite(r[p].sq_dist) || r[p].sq_dist < 0.0) {
                throw std::invalid_argument("KnnGraph: row " + std::to_string(i) +
                                            " has an invalid distance");
            }
            if (p > 0 && !neighbor_less(r[p - 1], r[p])) {
                throw std::invalid_argument("KnnGraph: row " + std::to_string(i) +
                                            " is not strictly ordered by (distance, id)");
            }
            for (std::uint32_t q = 0; q < p; ++q) {
                if (r[q].id == r[p].id) {
                    throw std::invalid_argument("KnnGraph: row " + std::to_string(i) +
                                                " lists id " + std::to_string(r[p].id) +
                                                " twice");
                }
            }
        }
    }
}

bool KnnGraph::contains(std::size_t i, std::uint32_t id) const noexcept {
    const NeighborEntry* r = entries_.data() + i * kappa_;
    for (std::uint32_t p = 0; p < kappa_; ++p) {
        if (r[p].id == id) return true;
    }
    return false;
}

bool KnnGraph::insert(std::size_t i, std::uint32_t id, double sq_dist) {
    if (i >= n_) throw std::invalid_argument("KnnGraph::insert: row out of range");
    if (id >= n_) throw std::invalid_argument("KnnGraph::insert: id out of range");
    if (id == i) throw std::invalid_argument("KnnGraph::insert: a row cannot list itself");
    if (contains(i, id)) return false;
    NeighborEntry* r = entries_.data() + i * kappa_;
    if (!(sq_dist < r[kappa_ - 1].sq_dist)) return false;

    const NeighborEntry e{id, sq_dist};
    std::uint32_t pos = kappa_ - 1;
    while (pos > 0 && neighbor_less(e, r[pos - 1])) {
        r[pos] = r[pos - 1];
        --pos;
    }
    r[pos] = e;
    return true;
}

}  // namespace gkm
