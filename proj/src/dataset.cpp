#include "gkm/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gkm {

Dataset::Dataset(std::size_t n, std::size_t d, std::vector<float> values)
    : n_(n), d_(d), values_(std::move(values)) {
    if (n_ == 0) throw std::invalid_argument("Dataset: need at least one sample");
    if (d_ == 0) throw std::invalid_argument("Dataset: need at least one dimension");
    if (values_.size() != n_ * d_) {
        throw std::invalid_argument("Dataset: expected " + std::to_string(n_ * d_) +
                                    " values, got " + std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw std::invalid_argument("Dataset: non-finite value at flat index " +
                                        std::to_string(i));
        }
    }

    row_sq_norms_.resize(n_);
    total_sq_norm_ = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const float* x = values_.data() + i * d_;
        double acc = 0.0;
        for (std::size_t j = 0; j < d_; ++j) {
            const double v = static_cast<double>(x[j]);
            acc += v * v;
        }
        row_sq_norms_[i] = acc;
        total_sq_norm_ += acc;
    }
}

}  // namespace gkm
