#pragma once

#include <cstdint>
#include <vector>

#include "gkm/dataset.hpp"

namespace gkm {

struct Mixture {
    Dataset data;
    std::vector<std::uint32_t> labels;  // generating component per sample
    std::vector<float> centers;         // k_true x d, row-major
};

// Gaussian mixture: k_true centers uniform in the unit hypercube, isotropic
// noise of scale sigma, component sizes balanced to within one sample,
// deterministic per seed. Requires n >= 1, d >= 1, 1 <= k_true <= n,
// sigma >= 0.
Mixture gen_mixture(std::size_t n, std::size_t d, std::uint32_t k_true, double sigma,
                    std::uint64_t seed);

}  // namespace gkm
