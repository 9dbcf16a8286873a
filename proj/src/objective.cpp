#include "gkm/objective.hpp"

#include <stdexcept>
#include <string>

namespace gkm {

double squared_distance(std::span<const float> a, std::span<const float> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("squared_distance: dimension mismatch");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = static_cast<double>(a[j]) - static_cast<double>(b[j]);
        acc += diff * diff;
    }
    return acc;
}

double squared_distance(std::span<const float> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("squared_distance: dimension mismatch");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = static_cast<double>(a[j]) - b[j];
        acc += diff * diff;
    }
    return acc;
}

double dot(std::span<const double> a, std::span<const float> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * static_cast<double>(b[j]);
    return acc;
}

double objective_value(const Dataset& data, const Partition& part) {
    if (part.size() != data.size()) {
        throw std::invalid_argument("objective_value: partition does not match dataset");
    }
    double total = 0.0;
    for (std::uint32_t r = 0; r < part.k(); ++r) {
        const std::size_t nr = part.cluster_size(r);
        if (nr == 0) continue;
        const auto comp = part.composite(r);
        double sq = 0.0;
        for (std::size_t j = 0; j < comp.size(); ++j) sq += comp[j] * comp[j];
        total += sq / static_cast<double>(nr);
    }
    return total;
}

double removal_gain(const Dataset& data, const Partition& part, std::size_t i) {
    if (i >= data.size()) throw std::invalid_argument("removal_gain: sample id out of range");
    const std::uint32_t u = part.cluster_of(i);
    const std::size_t nu = part.cluster_size(u);
    if (nu == 1) {
        throw std::invalid_argument("removal_gain: cluster " + std::to_string(u) +
                                    " would be emptied");
    }
    const double comp_sq = part.composite_sq_norm(u);
    // ||D_u - x||^2 = ||D_u||^2 - 2 D_u.x + ||x||^2
    const double reduced_sq = comp_sq - 2.0 * dot(part.composite(u), data.row(i)) +
                              data.row_sq_norm(i);
    return reduced_sq / static_cast<double>(nu - 1) - comp_sq / static_cast<double>(nu);
}

double insertion_gain(const Dataset& data, const Partition& part, std::size_t i,
                      std::uint32_t v) {
    if (i >= data.size()) throw std::invalid_argument("insertion_gain: sample id out of range");
    if (v >= part.k()) throw std::invalid_argument("insertion_gain: cluster id out of range");
    if (v == part.cluster_of(i)) {
        throw std::invalid_argument("insertion_gain: sample already in cluster " +
                                    std::to_string(v));
    }
    const std::size_t nv = part.cluster_size(v);
    const double comp_sq = part.composite_sq_norm(v);
    // ||D_v + x||^2 = ||D_v||^2 + 2 D_v.x + ||x||^2
    const double grown_sq = comp_sq + 2.0 * dot(part.composite(v), data.row(i)) +
                            data.row_sq_norm(i);
    const double grown_term = grown_sq / static_cast<double>(nv + 1);
    return nv == 0 ? grown_term : grown_term - comp_sq / static_cast<double>(nv);
}

double delta_move(const Dataset& data, const Partition& part, std::size_t i, std::uint32_t v) {
    return insertion_gain(data, part, i, v) + removal_gain(data, part, i);
}

void apply_move(Partition& part, const Dataset& data, std::size_t i, std::uint32_t v) {
    part.move_sample(data, i, v);
}

}  // namespace gkm
