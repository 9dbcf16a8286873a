#include "gkm/partition.hpp"

#include <stdexcept>
#include <string>

namespace gkm {

namespace {

double sq_norm(const double* v, std::size_t d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) acc += v[j] * v[j];
    return acc;
}

}  // namespace

Partition::Partition(const Dataset& data, std::vector<std::uint32_t> assignment, std::uint32_t k)
    : k_(k), d_(data.dim()), assignment_(std::move(assignment)) {
    if (k_ == 0) throw std::invalid_argument("Partition: k must be >= 1");
    if (assignment_.size() != data.size()) {
        throw std::invalid_argument("Partition: assignment length " +
                                    std::to_string(assignment_.size()) + " != dataset size " +
                                    std::to_string(data.size()));
    }

    composites_.assign(static_cast<std::size_t>(k_) * d_, 0.0);
    composite_sq_norms_.assign(k_, 0.0);
    sizes_.assign(k_, 0);

    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        const std::uint32_t r = assignment_[i];
        if (r >= k_) {
            throw std::invalid_argument("Partition: label " + std::to_string(r) + " at sample " +
                                        std::to_string(i) + " exceeds k-1=" +
                                        std::to_string(k_ - 1));
        }
        const auto x = data.row(i);
        double* comp = composites_.data() + static_cast<std::size_t>(r) * d_;
        for (std::size_t j = 0; j < d_; ++j) comp[j] += static_cast<double>(x[j]);
        ++sizes_[r];
    }
    for (std::uint32_t r = 0; r < k_; ++r) {
        composite_sq_norms_[r] = sq_norm(composites_.data() + static_cast<std::size_t>(r) * d_, d_);
    }
}

std::vector<double> Partition::centroid(std::uint32_t r) const {
    if (r >= k_) throw std::invalid_argument("Partition::centroid: cluster id out of range");
    if (sizes_[r] == 0) {
        throw std::invalid_argument("Partition::centroid: cluster " + std::to_string(r) +
                                    " is empty");
    }
    std::vector<double> c(d_);
    const double* comp = composites_.data() + static_cast<std::size_t>(r) * d_;
    const double inv = 1.0 / static_cast<double>(sizes_[r]);
    for (std::size_t j = 0; j < d_; ++j) c[j] = comp[j] * inv;
    return c;
}

std::vector<std::vector<std::uint32_t>> Partition::member_lists() const {
    std::vector<std::vector<std::uint32_t>> lists(k_);
    for (std::uint32_t r = 0; r < k_; ++r) lists[r].reserve(sizes_[r]);
    for (std::size_t i = 0; i < assignment_.size(); ++i) {
        lists[assignment_[i]].push_back(static_cast<std::uint32_t>(i));
    }
    return lists;
}

void Partition::move_sample(const Dataset& data, std::size_t i, std::uint32_t v) {
    if (i >= assignment_.size()) {
        throw std::invalid_argument("Partition::move_sample: sample id out of range");
    }
    if (v >= k_) throw std::invalid_argument("Partition::move_sample: cluster id out of range");
    const std::uint32_t u = assignment_[i];
    if (u == v) throw std::invalid_argument("Partition::move_sample: sample already in cluster");
    if (sizes_[u] == 1) {
        throw std::invalid_argument("Partition::move_sample: move would empty cluster " +
                                    std::to_string(u));
    }

    const auto x = data.row(i);
    double* src = composites_.data() + static_cast<std::size_t>(u) * d_;
    double* dst = composites_.data() + static_cast<std::size_t>(v) * d_;
    for (std::size_t j = 0; j < d_; ++j) {
        const double xv = static_cast<double>(x[j]);
        src[j] -= xv;
        dst[j] += xv;
    }
    --sizes_[u];
    ++sizes_[v];
    assignment_[i] = v;
    composite_sq_norms_[u] = sq_norm(src, d_);
    composite_sq_norms_[v] = sq_norm(dst, d_);
}

}  // namespace gkm
