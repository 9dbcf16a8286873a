#include "gkm/config.hpp"

#include <stdexcept>

namespace gkm {

Mode parse_mode(const std::string& name) {
    if (name == "boost") return Mode::boost;
    if (name == "traditional") return Mode::traditional;
    throw std::invalid_argument("unknown mode '" + name + "' (expected boost or traditional)");
}

const char* to_string(Mode mode) noexcept {
    return mode == Mode::boost ? "boost" : "traditional";
}

void Config::validate(std::size_t n) const {
    if (k < 1 || k > n) {
        throw std::invalid_argument("config: k must be in [1, n], got k=" + std::to_string(k) +
                                    " with n=" + std::to_string(n));
    }
    if (kappa < 1 || kappa > n - 1) {
        throw std::invalid_argument("config: kappa must be in [1, n-1], got kappa=" +
                                    std::to_string(kappa) + " with n=" + std::to_string(n));
    }
    if (xi < 2) throw std::invalid_argument("config: xi must be >= 2");
    if (tau < 1) throw std::invalid_argument("config: tau must be >= 1");
    if (max_iter < 1) throw std::invalid_argument("config: max_iter must be >= 1");
}

}  // namespace gkm
