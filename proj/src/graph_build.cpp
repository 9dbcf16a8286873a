#include "gkm/graph_build.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "gkm/graph_kmeans.hpp"
#include "gkm/objective.hpp"
#include "gkm/rng.hpp"

namespace gkm {

KnnGraph random_graph_init(const Dataset& data, std::uint32_t kappa, std::mt19937_64& gen) {
    const std::size_t n = data.size();
    if (kappa < 1 || kappa > n - 1) {
        throw std::invalid_argument("random_graph_init: kappa must be in [1, n-1]");
    }

    std::vector<NeighborEntry> entries;
    entries.reserve(n * kappa);
    std::vector<std::uint32_t> picks;
    picks.reserve(kappa);
    std::vector<NeighborEntry> row(kappa);

    for (std::size_t i = 0; i < n; ++i) {
        picks.clear();
        if (kappa > (n - 1) / 2) {
            // Dense rows: partial shuffle of all other ids.
            std::vector<std::uint32_t> pool;
            pool.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i) pool.push_back(static_cast<std::uint32_t>(j));
            }
            for (std::uint32_t p = 0; p < kappa; ++p) {
                const std::size_t j =
                    p + static_cast<std::size_t>(rng::below(gen, pool.size() - p));
                std::swap(pool[p], pool[j]);
                picks.push_back(pool[p]);
            }
        } else {
            // Sparse rows: rejection sampling with a linear duplicate check.
            while (picks.size() < kappa) {
                const auto c = static_cast<std::uint32_t>(rng::below(gen, n));
                if (c == i) continue;
                if (std::find(picks.begin(), picks.end(), c) != picks.end()) continue;
                picks.push_back(c);
            }
        }
        for (std::uint32_t p = 0; p < kappa; ++p) {
            row[p] = {picks[p], squared_distance(data.row(i), data.row(picks[p]))};
        }
        std::sort(row.begin(), row.end(), neighbor_less);
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return KnnGraph(n, kappa, std::move(entries));
}

bool update_knn_list(KnnGraph& graph, std::size_t i, std::size_t j, double sq_dist) {
    if (i == j) throw std::invalid_argument("update_knn_list: i and j must differ");
    if (i >= graph.size() || j >= graph.size()) {
        throw std::invalid_argument("update_knn_list: sample id out of range");
    }
    const bool a = graph.insert(i, static_cast<std::uint32_t>(j), sq_dist);
    const bool b = graph.insert(j, static_cast<std::uint32_t>(i), sq_dist);
    return a || b;
}

std::size_t refine_within_clusters(const Dataset& data, const Partition& part, KnnGraph& graph,
                                   std::uint64_t* ops) {
    if (part.size() != data.size() || graph.size() != data.size()) {
        throw std::invalid_argument("refine_within_clusters: size mismatch");
    }
    std::size_t updates = 0;
    std::uint64_t local_ops = 0;
    const auto lists = part.member_lists();
    for (const auto& members : lists) {
        for (std::size_t p = 0; p + 1 < members.size(); ++p) {
            for (std::size_t q = p + 1; q < members.size(); ++q) {
                const std::uint32_t a = members[p];
                const std::uint32_t b = members[q];
                const double dist = squared_distance(data.row(a), data.row(b));
                ++local_ops;
                if (graph.insert(a, b, dist)) ++updates;
                if (graph.insert(b, a, dist)) ++updates;
            }
        }
    }
    if (ops) *ops += local_ops;
    return updates;
}

KnnGraph build_knn_graph(const Dataset& data, std::uint32_t kappa, const Config& config,
                         BuildStats* stats, const BuildObserver& observer) {
    const std::size_t n = data.size();
    if (kappa < 1 || kappa > n - 1) {
        throw std::invalid_argument("build_knn_graph: kappa must be in [1, n-1]");
    }
    if (config.xi < 2) throw std::invalid_argument("build_knn_graph: xi must be >= 2");
    if (n <= config.xi) {
        throw std::invalid_argument(
            "build_knn_graph: dataset has only " + std::to_string(n) +
            " samples for xi=" + std::to_string(config.xi) +
            "; an exhaustive scan is cheaper (see brute_force_knn)");
    }

    std::mt19937_64 master(config.seed);
    BuildStats local;

    KnnGraph graph = random_graph_init(data, kappa, master);
    local.distance_evals += static_cast<std::uint64_t>(n) * kappa;

    const auto k0 = static_cast<std::uint32_t>(n / config.xi);
    std::optional<Partition> previous;

    for (std::uint32_t t = 0; t < config.tau; ++t) {
        Config inner = config;
        inner.k = k0;
        inner.max_iter = 1;  // the graph improves between passes instead
        inner.seed = master();

        GkMeansStats pass_stats;
        Partition part = gk_means(data, k0, graph, inner, nullptr, &pass_stats,
                                  previous ? &*previous : nullptr);
        local.distance_evals += pass_stats.distance_evals;

        local.row_updates += refine_within_clusters(data, part, graph, &local.distance_evals);

        if (observer) observer(t, part, graph);
        if (config.warm_start) previous = std::move(part);
    }

    if (stats) {
        stats->distance_evals += local.distance_evals;
        stats->row_updates += local.row_updates;
    }
    return graph;
}

}  // namespace gkm
