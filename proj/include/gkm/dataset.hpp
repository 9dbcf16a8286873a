#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gkm {

// Immutable n x d sample matrix, row-major float32 storage.
// All arithmetic over it accumulates in double precision.
class Dataset {
public:
    // Throws std::invalid_argument on n < 1, d < 1, size mismatch or
    // non-finite entries.
    Dataset(std::size_t n, std::size_t d, std::vector<float> values);

    std::size_t size() const noexcept { return n_; }
    std::size_t dim() const noexcept { return d_; }

    std::span<const float> row(std::size_t i) const noexcept {
        return {values_.data() + i * d_, d_};
    }
    const std::vector<float>& values() const noexcept { return values_; }

    double row_sq_norm(std::size_t i) const noexcept { return row_sq_norms_[i]; }
    double total_sq_norm() const noexcept { return total_sq_norm_; }

private:
    std::size_t n_;
    std::size_t d_;
    std::vector<float> values_;
    std::vector<double> row_sq_norms_;
    double total_sq_norm_;
};

}  // namespace gkm
