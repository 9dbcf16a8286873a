#include "gkm/graph_kmeans.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "gkm/baselines.hpp"
#include "gkm/objective.hpp"
#include "gkm/rng.hpp"
#include "gkm/two_means.hpp"

namespace gkm {

namespace {

// ||x - D/size||^2 without materializing the centroid.
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

}  // namespace

void CandidateSet::insert(std::uint32_t cluster_id) {
    if (!contains(cluster_id)) ids_.push_back(cluster_id);
}

bool CandidateSet::contains(std::uint32_t cluster_id) const noexcept {
    return std::find(ids_.begin(), ids_.end(), cluster_id) != ids_.end();
}

void candidate_clusters_into(const Partition& part, const KnnGraph& graph, std::size_t i,
                             CandidateSet& out) {
    out.clear();
    const std::uint32_t own = part.cluster_of(i);
    for (const NeighborEntry& e : graph.row(i)) {
        const std::uint32_t r = part.cluster_of(e.id);
        if (r != own) out.insert(r);
    }
}

CandidateSet candidate_clusters(const Partition& part, const KnnGraph& graph, std::size_t i) {
    if (i >= part.size()) {
        throw std::invalid_argument("candidate_clusters: sample id out of range");
    }
    if (graph.size() != part.size()) {
        throw std::invalid_argument("candidate_clusters: graph does not match partition");
    }
    CandidateSet out;
    candidate_clusters_into(part, graph, i, out);
    return out;
}

std::optional<MoveProposal> best_move(const Dataset& data, const Partition& part, std::size_t i,
                                      const CandidateSet& candidates, Mode mode) {
    if (i >= data.size()) throw std::invalid_argument("best_move: sample id out of range");
    if (candidates.empty()) return std::nullopt;
    const std::uint32_t own = part.cluster_of(i);
    if (part.cluster_size(own) == 1) return std::nullopt;  // any move would empty it

    if (mode == Mode::boost) {
        const double source = removal_gain(data, part, i);
        bool found = false;
        std::uint32_t best_v = 0;
        double best_gain = 0.0;
        for (const std::uint32_t v : candidates.ids()) {
            const double gain = insertion_gain(data, part, i, v) + source;
            if (!found || gain > best_gain || (gain == best_gain && v < best_v)) {
                found = true;
                best_gain = gain;
                best_v = v;
            }
        }
        if (!found || !(best_gain > 0.0)) return std::nullopt;
        return MoveProposal{best_v, best_gain};
    }

    // Traditional rule: nearest candidate centroid, strictly nearer than the
    // current one.
    const auto x = data.row(i);
    const double own_dist = sq_dist_to_centroid(x, part.composite(own), part.cluster_size(own));
    bool found = false;
    std::uint32_t best_v = 0;
    double best_dist = 0.0;
    for (const std::uint32_t v : candidates.ids()) {
        if (part.cluster_size(v) == 0) continue;  // no centroid to compare against
        const double dist = sq_dist_to_centroid(x, part.composite(v), part.cluster_size(v));
        if (!found || dist < best_dist || (dist == best_dist && v < best_v)) {
            found = true;
            best_dist = dist;
            best_v = v;
        }
    }
    if (!found || !(best_dist < own_dist)) return std::nullopt;
    return MoveProposal{best_v, own_dist - best_dist};
}

Partition gk_means(const Dataset& data, std::uint32_t k, const KnnGraph& graph,
                   const Config& config, MetricsTrace* trace, GkMeansStats* stats,
                   const Partition* warm) {
    if (graph.size() != data.size()) {
        throw std::invalid_argument("gk_means: graph does not match dataset");
    }
    const std::size_t n = data.size();
    if (k < 1 || k > n) {
        throw std::invalid_argument("gk_means: k must be in [1, n]");
    }
    if (config.max_iter < 1) throw std::invalid_argument("gk_means: max_iter must be >= 1");

    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    std::mt19937_64 gen(config.seed);
    GkMeansStats local;

    Partition part = [&] {
        if (config.warm_start && warm != nullptr) {
            if (warm->size() != n || warm->k() != k) {
                throw std::invalid_argument("gk_means: warm-start partition shape mismatch");
            }
            return *warm;
        }
        return two_means_tree(data, k, gen, &local.distance_evals);
    }();

    if (trace) {
        trace->add({0, elapsed(), distortion(data, part), std::nullopt, 0,
                    local.distance_evals});
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    CandidateSet candidates;

    for (std::uint32_t pass = 1; pass <= config.max_iter; ++pass) {
        rng::shuffle(order, gen);
        std::uint64_t moves = 0;
        for (const std::size_t i : order) {
            candidate_clusters_into(part, graph, i, candidates);
            local.distance_evals += 1 + candidates.size();
            const auto proposal = best_move(data, part, i, candidates, config.mode);
            if (proposal) {
                part.move_sample(data, i, proposal->target);
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
