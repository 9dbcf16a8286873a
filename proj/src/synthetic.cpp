#include "gkm/synthetic.hpp"

#include <random>
#include <stdexcept>

#include "gkm/rng.hpp"

namespace gkm {

Mixture gen_mixture(std::size_t n, std::size_t d, std::uint32_t k_true, double sigma,
                    std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_mixture: n must be >= 1");
    if (d < 1) throw std::invalid_argument("gen_mixture: d must be >= 1");
    if (k_true < 1 || k_true > n) {
        throw std::invalid_argument("gen_mixture: k_true must be in [1, n]");
    }
    if (!(sigma >= 0.0)) throw std::invalid_argument("gen_mixture: sigma must be >= 0");

    std::mt19937_64 gen(seed);

    std::vector<float> centers(static_cast<std::size_t>(k_true) * d);
    for (auto& c : centers) c = static_cast<float>(rng::unit_double(gen));

    // Component sizes balanced to within one: the first (n mod k_true)
    // components receive the extra sample.
    std::vector<std::uint32_t> labels;
    labels.reserve(n);
    const std::size_t base = n / k_true;
    const std::size_t extra = n % k_true;
    for (std::uint32_t c = 0; c < k_true; ++c) {
        const std::size_t count = base + (c < extra ? 1 : 0);
        labels.insert(labels.end(), count, c);
    }
    rng::shuffle(labels, gen);

    std::vector<float> values(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        const float* center = centers.data() + static_cast<std::size_t>(labels[i]) * d;
        for (std::size_t j = 0; j < d; ++j) {
            values[i * d + j] =
                static_cast<float>(static_cast<double>(center[j]) + sigma * rng::normal(gen));
        }
    }
    return Mixture{Dataset(n, d, std::move(values)), std::move(labels), std::move(centers)};
}

}  // namespace gkm
