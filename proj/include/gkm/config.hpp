#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace gkm {

// Move-selection rule used by the clustering pass.
//   boost:       accept the move with the largest positive composite-objective gain
//   traditional: move to the nearest candidate centroid when strictly nearer
enum class Mode { boost, traditional };

Mode parse_mode(const std::string& name);  // "boost" | "traditional"
const char* to_string(Mode mode) noexcept;

// Tunables shared by the clustering and graph-construction drivers.
struct Config {
    std::uint32_t k = 0;         // target cluster count
    std::uint32_t kappa = 50;    // neighbor-list length
    std::uint32_t xi = 50;       // average cluster size during graph construction
    std::uint32_t tau = 10;      // graph-construction outer iterations
    std::uint32_t max_iter = 30; // cap on clustering passes
    std::uint64_t seed = 0;
    Mode mode = Mode::boost;
    bool warm_start = false;     // reuse the previous partition across graph-construction iterations

    // Validates against a dataset of n samples; throws std::invalid_argument.
    void validate(std::size_t n) const;
};

}  // namespace gkm
