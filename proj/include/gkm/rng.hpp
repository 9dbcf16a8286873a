#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

// Deterministic sampling helpers on top of std::mt19937_64. The standard
// distribution templates are implementation-defined, so identical seeds could
// yield different streams across toolchains; these are pinned algorithms.
namespace gkm::rng {

// Unbiased uniform integer in [0, bound) by rejection. bound must be > 0.
inline std::uint64_t below(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0} / bound));
    for (;;) {
        const std::uint64_t raw = gen();
        if (raw < limit) return raw % bound;
    }
}

// Uniform double in [0, 1) with 53 random bits.
inline double unit_double(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Standard normal via the Box-Muller cosine branch (one value per call).
inline double normal(std::mt19937_64& gen) {
    double u = unit_double(gen);
    while (u == 0.0) u = unit_double(gen);
    const double v = unit_double(gen);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

// Fisher-Yates shuffle.
template <class T>
void shuffle(std::vector<T>& values, std::mt19937_64& gen) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(below(gen, i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace gkm::rng
