#include "gkm/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gkm/objective.hpp"
#include "gkm/rng.hpp"
#include "gkm/two_means.hpp"

namespace gkm {

namespace {

double sq_dist_to_centroid(std::span<const float> x, std::span<const double> comp,
                           std::size_t size) {
    const double inv = 1.0 / static_cast<double>(size);
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double diff = static_cast<double>(x[j]) - comp[j] * inv;
        acc += diff * diff;
    }
    return acc;
}

// Reassigns one sample into each empty cluster: the sample farthest from its
// own centroid among clusters of size >= 2 (ties: lowest sample id). Returns
// the number of repairs.
std::size_t repair_empty_clusters(const Dataset& data, Partition& part) {
    std::size_t repairs = 0;
    for (;;) {
        std::uint32_t empty = part.k();
        for (std::uint32_t r = 0; r < part.k(); ++r) {
            if (part.cluster_size(r) == 0) {
                empty = r;
                break;
            }
        }
        if (empty == part.k()) return repairs;

        std::size_t donor = data.size();
        double worst = -1.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const std::uint32_t u = part.cluster_of(i);
            if (part.cluster_size(u) < 2) continue;
            const double dist =
                sq_dist_to_centroid(data.row(i), part.composite(u), part.cluster_size(u));
            if (dist > worst) {
                worst = dist;
                donor = i;
            }
        }
        if (donor == data.size()) {
            throw std::runtime_error("lloyd_kmeans: cannot repair empty cluster (k > n?)");
        }
        part.move_sample(data, donor, empty);
        ++repairs;
    }
}

}  // namespace

Partition lloyd_kmeans(const Dataset& data, std::uint32_t k, Partition init,
                       std::uint32_t max_iter, MetricsTrace* trace) {
    if (init.size() != data.size()) {
        throw std::invalid_argument("lloyd_kmeans: init does not match dataset");
    }
    if (init.k() != k) {
        throw std::invalid_argument("lloyd_kmeans: init has k=" + std::to_string(init.k()) +
                                    ", expected " + std::to_string(k));
    }
    if (max_iter < 1) throw std::invalid_argument("lloyd_kmeans: max_iter must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    const std::size_t n = data.size();
    const std::size_t d = data.dim();
    Partition part = std::move(init);
    std::uint64_t evals = 0;

    repair_empty_clusters(data, part);

    std::vector<double> centroids(static_cast<std::size_t>(k) * d);
    std::vector<std::uint32_t> next(n);

    for (std::uint32_t iter = 1; iter <= max_iter; ++iter) {
        for (std::uint32_t r = 0; r < k; ++r) {
            const auto comp = part.composite(r);
            const double inv = 1.0 / static_cast<double>(part.cluster_size(r));
            double* c = centroids.data() + static_cast<std::size_t>(r) * d;
            for (std::size_t j = 0; j < d; ++j) c[j] = comp[j] * inv;
        }

        std::size_t changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto x = data.row(i);
            std::uint32_t best_r = 0;
            double best_dist = std::numeric_limits<double>::infinity();
            for (std::uint32_t r = 0; r < k; ++r) {
                const double dist = squared_distance(
                    x, std::span<const double>{centroids.data() + static_cast<std::size_t>(r) * d,
                                               d});
                if (dist < best_dist) {  // ties keep the lowest cluster id
                    best_dist = dist;
                    best_r = r;
                }
            }
            next[i] = best_r;
            if (best_r != part.cluster_of(i)) ++changed;
        }
        evals += static_cast<std::uint64_t>(n) * k;

        part = Partition(data, next, k);
        const std::size_t repairs = repair_empty_clusters(data, part);
        evals += repairs * n;

        if (trace) {
            trace->add({iter, elapsed(), distortion(data, part), std::nullopt,
                        changed + repairs, evals});
        }
        if (changed == 0 && repairs == 0) break;
    }
    return part;
}

double distortion(const Dataset& data, const Partition& part) {
    if (part.size() != data.size()) {
        throw std::invalid_argument("distortion: partition does not match dataset");
    }
    for (std::uint32_t r = 0; r < part.k(); ++r) {
        if (part.cluster_size(r) == 0) {
            throw std::invalid_argument("distortion: cluster " + std::to_string(r) +
                                        " is empty");
        }
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const std::uint32_t r = part.cluster_of(i);
        acc += sq_dist_to_centroid(data.row(i), part.composite(r), part.cluster_size(r));
    }
    return acc / static_cast<double>(data.size());
}

KnnGraph brute_force_knn(const Dataset& data, std::uint32_t kappa) {
    const std::size_t n = data.size();
    if (kappa < 1 || kappa > n - 1) {
        throw std::invalid_argument("brute_force_knn: kappa must be in [1, n-1]");
    }

    // Per-row bounded max-heaps keyed by (sq_dist, id); the heap top is the
    // current worst candidate.
    std::vector<NeighborEntry> entries(n * kappa);
    std::vector<std::uint32_t> counts(n, 0);
    const auto offer = [&](std::size_t row, std::uint32_t id, double sq_dist) {
        NeighborEntry* h = entries.data() + row * kappa;
        if (counts[row] < kappa) {
            h[counts[row]++] = {id, sq_dist};
            std::push_heap(h, h + counts[row], neighbor_less);
        } else if (neighbor_less({id, sq_dist}, h[0])) {
            std::pop_heap(h, h + kappa, neighbor_less);
            h[kappa - 1] = {id, sq_dist};
            std::push_heap(h, h + kappa, neighbor_less);
        }
    };

    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double sq_dist = squared_distance(data.row(i), data.row(j));
            offer(i, static_cast<std::uint32_t>(j), sq_dist);
            offer(j, static_cast<std::uint32_t>(i), sq_dist);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        NeighborEntry* h = entries.data() + i * kappa;
        std::sort(h, h + kappa, neighbor_less);
    }
    return KnnGraph(n, kappa, std::move(entries));
}

double recall_at_1(const KnnGraph& approx, const KnnGraph& exact,
                   std::span<const std::uint32_t> subset, RecallMode mode) {
    if (approx.size() != exact.size()) {
        throw std::invalid_argument("recall_at_1: graphs disagree on the number of rows");
    }
    const std::size_t n = exact.size();
    std::size_t hits = 0;
    std::size_t total = 0;
    const auto check = [&](std::size_t i) {
        const std::uint32_t truth = exact.row(i)[0].id;
        ++total;
        if (mode == RecallMode::top1_only) {
            if (approx.row(i)[0].id == truth) ++hits;
        } else if (approx.contains(i, truth)) {
            ++hits;
        }
    };
    if (subset.empty()) {
        for (std::size_t i = 0; i < n; ++i) check(i);
    } else {
        for (const std::uint32_t i : subset) {
            if (i >= n) throw std::invalid_argument("recall_at_1: subset id out of range");
            check(i);
        }
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

double co_membership_rate(const Partition& part, const KnnGraph& exact, std::uint32_t rank) {
    if (part.size() != exact.size()) {
        throw std::invalid_argument("co_membership_rate: partition does not match graph");
    }
    if (rank < 1 || rank > exact.kappa()) {
        throw std::invalid_argument("co_membership_rate: rank must be in [1, kappa]");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < part.size(); ++i) {
        const std::uint32_t neighbor = exact.row(i)[rank - 1].id;
        if (part.cluster_of(neighbor) == part.cluster_of(i)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(part.size());
}

Partition boost_kmeans(const Dataset& data, std::uint32_t k, const Config& config,
                       MetricsTrace* trace, GkMeansStats* stats) {
    const std::size_t n = data.size();
    if (k < 1 || k > n) throw std::invalid_argument("boost_kmeans: k must be in [1, n]");
    if (config.max_iter < 1) throw std::invalid_argument("boost_kmeans: max_iter must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    std::mt19937_64 gen(config.seed);
    GkMeansStats local;
    Partition part = two_means_tree(data, k, gen, &local.distance_evals);

    if (trace) {
        trace->add({0, elapsed(), distortion(data, part), std::nullopt, 0,
                    local.distance_evals});
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::uint32_t pass = 1; pass <= config.max_iter; ++pass) {
        rng::shuffle(order, gen);
        std::uint64_t moves = 0;
        for (const std::size_t i : order) {
            const std::uint32_t own = part.cluster_of(i);
            if (part.cluster_size(own) == 1) continue;
            const double source = removal_gain(data, part, i);
            bool found = false;
            std::uint32_t best_v = 0;
            double best_gain = 0.0;
            for (std::uint32_t v = 0; v < k; ++v) {
                if (v == own) continue;
                const double gain = insertion_gain(data, part, i, v) + source;
                if (!found || gain > best_gain || (gain == best_gain && v < best_v)) {
                    found = true;
                    best_gain = gain;
                    best_v = v;
                }
            }
            local.distance_evals += k;  // one source + (k-1) target evaluations
            if (found && best_gain > 0.0) {
                part.move_sample(data, i, best_v);
                ++moves;
            }
        }
        ++local.passes;
        local.moves_accepted += moves;
        if (trace) {
            trace->add({pass, elapsed(), distortion(data, part), std::nullopt, moves,
                        local.distance_evals});
        }
        if (moves == 0) break;
    }

    if (stats) {
        stats->passes += local.passes;
        stats->moves_accepted += local.moves_accepted;
        stats->distance_evals += local.distance_evals;
    }
    return part;
}

}  // namespace gkm
