#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "gkm/dataset.hpp"
#include "gkm/partition.hpp"

namespace gkm {

// ||a - b||^2 with double accumulation. Throws std::invalid_argument on
// dimension mismatch.
double squared_distance(std::span<const float> a, std::span<const float> b);

// Same against a double-precision point (e.g. a centroid).
double squared_distance(std::span<const float> a, std::span<const double> b);

// Double-accumulated dot product of a double vector against a float32 row.
double dot(std::span<const double> a, std::span<const float> b);

// Composite objective I = sum_r (D_r . D_r) / n_r, computed from the stored
// sufficient statistics. Empty clusters contribute zero.
double objective_value(const Dataset& data, const Partition& part);

// Objective change contributed by removing sample i from its current cluster
// u: ||D_u - x||^2 / (n_u - 1) - ||D_u||^2 / n_u. Throws when u is a
// singleton (the removal would empty it).
double removal_gain(const Dataset& data, const Partition& part, std::size_t i);

// Objective change contributed by inserting sample i into cluster v:
// ||D_v + x||^2 / (n_v + 1) - ||D_v||^2 / n_v (zero-size v contributes
// ||x||^2). v must differ from i's current cluster.
double insertion_gain(const Dataset& data, const Partition& part, std::size_t i,
                      std::uint32_t v);

// Objective change of moving sample i to cluster v, evaluated in O(d) from
// the sufficient statistics: insertion_gain + removal_gain. Positive means
// the move improves the composite objective.
double delta_move(const Dataset& data, const Partition& part, std::size_t i, std::uint32_t v);

// Executes the move evaluated by delta_move. Same preconditions.
void apply_move(Partition& part, const Dataset& data, std::size_t i, std::uint32_t v);

}  // namespace gkm
