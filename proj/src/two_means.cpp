#include "gkm/two_means.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

#include "gkm/objective.hpp"
#include "gkm/rng.hpp"

namespace gkm {

namespace {

constexpr std::uint32_t kBisectPassCap = 10;

double sq_norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (const double x : v) acc += x * x;
    return acc;
}

}  // namespace

std::pair<IdList, IdList> bisect(const Dataset& data, std::span<const std::uint32_t> members,
                                 std::mt19937_64& gen, std::uint64_t* ops) {
    const std::size_t m = members.size();
    if (m < 2) throw std::invalid_argument("bisect: need at least two samples");
    const std::size_t d = data.dim();
    std::uint64_t local_ops = 0;

    // Two distinct seed positions.
    const std::size_t pa = static_cast<std::size_t>(rng::below(gen, m));
    std::size_t pb = static_cast<std::size_t>(rng::below(gen, m - 1));
    if (pb >= pa) ++pb;
    const auto seed0 = data.row(members[pa]);
    const auto seed1 = data.row(members[pb]);

    // Nearest-seed initial sides (ties to side 0); the signed margin feeds
    // the duplicate-heavy repair below.
    std::vector<std::uint8_t> side(m);
    std::vector<double> margin(m);
    std::array<std::size_t, 2> cnt{0, 0};
    for (std::size_t p = 0; p < m; ++p) {
        const auto x = data.row(members[p]);
        const double d0 = squared_distance(x, seed0);
        const double d1 = squared_distance(x, seed1);
        margin[p] = d0 - d1;
        side[p] = d0 <= d1 ? 0 : 1;
        ++cnt[side[p]];
    }
    local_ops += 2 * m;

    if (cnt[0] == 0 || cnt[1] == 0) {
        // Every sample chose the same seed (heavy duplication). Flip the
        // least committed sample; ties break on the lowest sample id.
        const bool all_zero = cnt[1] == 0;
        std::size_t pick = 0;
        for (std::size_t p = 1; p < m; ++p) {
            const bool better = all_zero
                                    ? (margin[p] > margin[pick] ||
                                       (margin[p] == margin[pick] && members[p] < members[pick]))
                                    : (margin[p] < margin[pick] ||
                                       (margin[p] == margin[pick] && members[p] < members[pick]));
            if (better) pick = p;
        }
        const std::uint8_t from = side[pick];
        side[pick] = static_cast<std::uint8_t>(1 - from);
        --cnt[from];
        ++cnt[side[pick]];
    }

    // Side sufficient statistics.
    std::array<std::vector<double>, 2> comp{std::vector<double>(d, 0.0),
                                            std::vector<double>(d, 0.0)};
    for (std::size_t p = 0; p < m; ++p) {
        const auto x = data.row(members[p]);
        std::vector<double>& c = comp[side[p]];
        for (std::size_t j = 0; j < d; ++j) c[j] += static_cast<double>(x[j]);
    }
    std::array<double, 2> comp_sq{sq_norm(comp[0]), sq_norm(comp[1])};
    local_ops += m + 2;

    // Incremental optimization of the composite objective, one sample at a
    // time in a reshuffled order, until a pass keeps everything in place.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::uint32_t pass = 0; pass < kBisectPassCap; ++pass) {
        rng::shuffle(order, gen);
        std::size_t moves = 0;
        for (const std::size_t p : order) {
            const std::uint8_t u = side[p];
            if (cnt[u] == 1) continue;  // never empty a side
            const std::uint8_t v = static_cast<std::uint8_t>(1 - u);
            const auto x = data.row(members[p]);
            const double x_sq = data.row_sq_norm(members[p]);
            const double reduced_sq = comp_sq[u] - 2.0 * dot(comp[u], x) + x_sq;
            const double grown_sq = comp_sq[v] + 2.0 * dot(comp[v], x) + x_sq;
            local_ops += 2;
            const double delta = grown_sq / static_cast<double>(cnt[v] + 1) -
                                 comp_sq[v] / static_cast<double>(cnt[v]) +
                                 reduced_sq / static_cast<double>(cnt[u] - 1) -
                                 comp_sq[u] / static_cast<double>(cnt[u]);
            if (delta > 0.0) {
                for (std::size_t j = 0; j < d; ++j) {
                    const double xv = static_cast<double>(x[j]);
                    comp[u][j] -= xv;
                    comp[v][j] += xv;
                }
                comp_sq[u] = sq_norm(comp[u]);
                comp_sq[v] = sq_norm(comp[v]);
                local_ops += 3;
                --cnt[u];
                ++cnt[v];
                side[p] = v;
                ++moves;
            }
        }
        if (moves == 0) break;
    }

    IdList left, right;
    left.reserve(cnt[0]);
    right.reserve(cnt[1]);
    for (std::size_t p = 0; p < m; ++p) {
        (side[p] == 0 ? left : right).push_back(members[p]);
    }
    if (ops) *ops += local_ops;
    return {std::move(left), std::move(right)};
}

std::pair<IdList, IdList> balance_equal_size(const Dataset& data, IdList left, IdList right,
                                             std::uint64_t* ops) {
    if (left.empty() || right.empty()) {
        throw std::invalid_argument("balance_equal_size: halves must be non-empty");
    }
    const std::size_t a = left.size();
    const std::size_t b = right.size();
    const std::size_t diff = a > b ? a - b : b - a;
    if (diff <= 1) return {std::move(left), std::move(right)};

    IdList& big = a > b ? left : right;
    IdList& small = a > b ? right : left;
    const std::size_t move_count = diff / 2;
    const std::size_t d = data.dim();
    std::uint64_t local_ops = 0;

    // Fixed centroids of the two halves.
    std::vector<double> c_big(d, 0.0), c_small(d, 0.0);
    for (const std::uint32_t id : big) {
        const auto x = data.row(id);
        for (std::size_t j = 0; j < d; ++j) c_big[j] += static_cast<double>(x[j]);
    }
    for (const std::uint32_t id : small) {
        const auto x = data.row(id);
        for (std::size_t j = 0; j < d; ++j) c_small[j] += static_cast<double>(x[j]);
    }
    local_ops += big.size() + small.size();
    for (std::size_t j = 0; j < d; ++j) {
        c_big[j] /= static_cast<double>(big.size());
        c_small[j] /= static_cast<double>(small.size());
    }

    // Migrate the big-half samples that lose the least: smallest
    // d(x, far) - d(x, own), ties on ascending id.
    struct Scored {
        double margin;
        std::uint32_t id;
    };
    std::vector<Scored> scored;
    scored.reserve(big.size());
    for (const std::uint32_t id : big) {
        const auto x = data.row(id);
        const double to_small = squared_distance(x, std::span<const double>{c_small});
        const double to_big = squared_distance(x, std::span<const double>{c_big});
        scored.push_back({to_small - to_big, id});
    }
    local_ops += 2 * big.size();
    std::sort(scored.begin(), scored.end(), [](const Scored& lhs, const Scored& rhs) {
        if (lhs.margin != rhs.margin) return lhs.margin < rhs.margin;
        return lhs.id < rhs.id;
    });

    // Membership test via the sorted chosen-id list.
    std::vector<std::uint32_t> chosen;
    chosen.reserve(move_count);
    for (std::size_t s = 0; s < move_count; ++s) chosen.push_back(scored[s].id);
    std::sort(chosen.begin(), chosen.end());
    IdList kept;
    kept.reserve(big.size() - move_count);
    for (const std::uint32_t id : big) {
        if (std::binary_search(chosen.begin(), chosen.end(), id)) {
            small.push_back(id);
        } else {
            kept.push_back(id);
        }
    }
    big = std::move(kept);

    if (ops) *ops += local_ops;
    return {std::move(left), std::move(right)};
}

Partition two_means_tree(const Dataset& data, std::uint32_t k, std::mt19937_64& gen,
                         std::uint64_t* ops) {
    const std::size_t n = data.size();
    if (k < 1 || k > n) {
        throw std::invalid_argument("two_means_tree: k must be in [1, n], got k=" +
                                    std::to_string(k) + " with n=" + std::to_string(n));
    }

    std::vector<IdList> clusters;
    clusters.reserve(k);
    IdList all(n);
    std::iota(all.begin(), all.end(), std::uint32_t{0});
    clusters.push_back(std::move(all));

    // Max-heap on (size, then lowest cluster id). Each cluster id has exactly
    // one live entry: ids only change size when popped.
    struct Entry {
        std::size_t size;
        std::uint32_t id;
    };
    const auto cmp = [](const Entry& lhs, const Entry& rhs) {
        if (lhs.size != rhs.size) return lhs.size < rhs.size;
        return lhs.id > rhs.id;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    heap.push({n, 0});

    while (clusters.size() < k) {
        const Entry top = heap.top();
        heap.pop();
        auto halves = bisect(data, clusters[top.id], gen, ops);
        auto balanced =
            balance_equal_size(data, std::move(halves.first), std::move(halves.second), ops);
        const std::uint32_t fresh = static_cast<std::uint32_t>(clusters.size());
        clusters[top.id] = std::move(balanced.first);
        clusters.push_back(std::move(balanced.second));
        heap.push({clusters[top.id].size(), top.id});
        heap.push({clusters[fresh].size(), fresh});
    }

    std::vector<std::uint32_t> assignment(n);
    for (std::uint32_t r = 0; r < clusters.size(); ++r) {
        for (const std::uint32_t id : clusters[r]) assignment[id] = r;
    }
    return Partition(data, std::move(assignment), k);
}

}  // namespace gkm
