#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "gkm/baselines.hpp"
#include "gkm/graph_build.hpp"
#include "gkm/graph_kmeans.hpp"
#include "gkm/objective.hpp"
#include "gkm/rng.hpp"
#include "gkm/synthetic.hpp"
#include "gkm/two_means.hpp"
#include "test_util.hpp"

using namespace gkm;

namespace {

Config basic_config(std::uint32_t k, std::uint64_t seed) {
    Config config;
    config.k = k;
    config.seed = seed;
    return config;
}

// Forgy-style Lloyd restart: k distinct random seed samples, assign nearest.
Partition lloyd_restart(const Dataset& data, std::uint32_t k, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::uint32_t> seeds;
    while (seeds.size() < k) {
        const auto c = static_cast<std::uint32_t>(rng::below(gen, data.size()));
        if (std::find(seeds.begin(), seeds.end(), c) == seeds.end()) seeds.push_back(c);
    }
    std::vector<std::uint32_t> assignment(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        std::uint32_t best = 0;
        double best_dist = squared_distance(data.row(i), data.row(seeds[0]));
        for (std::uint32_t r = 1; r < k; ++r) {
            const double dist = squared_distance(data.row(i), data.row(seeds[r]));
            if (dist < best_dist) {
                best_dist = dist;
                best = r;
            }
        }
        assignment[i] = best;
    }
    return lloyd_kmeans(data, k, Partition(data, std::move(assignment), k), 100);
}

}  // namespace

TEST_CASE("candidate_clusters dedups and excludes the own cluster") {
    // 5 samples; sample 0's neighbors live in clusters {2,2,5,7}-style.
    const auto data = testutil::random_dataset(8, 2, 1);
    //                              0  1  2  3  4  5  6  7
    std::vector<std::uint32_t> assignment{1, 2, 2, 5, 7, 1, 3, 4};
    const Partition part(data, assignment, 8);
    const auto graph = testutil::graph_from_ids(data, {{1, 2, 3, 4},
                                                       {0, 2, 3, 4},
                                                       {0, 1, 3, 4},
                                                       {0, 1, 2, 4},
                                                       {0, 1, 2, 3},
                                                       {0, 1, 2, 3},
                                                       {0, 1, 2, 3},
                                                       {0, 1, 2, 3}});
    const CandidateSet cands = candidate_clusters(part, graph, 0);
    const std::vector<std::uint32_t> got(cands.ids().begin(), cands.ids().end());
    // Neighbor clusters in row order are {2,2,5,7}; own cluster 1 absent.
    std::vector<std::uint32_t> sorted_got = got;
    std::sort(sorted_got.begin(), sorted_got.end());
    CHECK(sorted_got == std::vector<std::uint32_t>{2, 5, 7});
    CHECK(cands.size() <= graph.kappa());

    // All neighbors in the own cluster -> empty set.
    std::vector<std::uint32_t> same(8, 0);
    const Partition one(data, same, 1);
    CHECK(candidate_clusters(one, graph, 0).empty());
}

TEST_CASE("best_move returns none when nothing improves") {
    const Dataset data(3, 2, {0.0f, 0.0f, 0.0f, 2.0f, 10.0f, 0.0f});
    const Partition part(data, {0, 0, 1}, 2);

    CandidateSet empty;
    CHECK(!best_move(data, part, 1, empty, Mode::boost).has_value());

    // Single candidate whose gain is -50 (the worked delta example).
    CandidateSet negative;
    negative.insert(1);
    CHECK(!best_move(data, part, 1, negative, Mode::boost).has_value());

    // Singleton source cluster: no admissible move at all.
    CandidateSet any;
    any.insert(0);
    CHECK(!best_move(data, part, 2, any, Mode::boost).has_value());
}

TEST_CASE("best_move equals the exhaustive argmax oracle") {
    const std::size_t n = 30;
    const std::uint32_t k = 5;
    for (int trial = 0; trial < 40; ++trial) {
        const auto data = testutil::random_dataset(n, 3, 6000 + trial);
        const auto assignment = testutil::random_assignment(n, k, 6100 + trial);
        const Partition part(data, assignment, k);
        CandidateSet all;
        for (std::uint32_t r = 0; r < k; ++r) all.insert(r);

        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t u = part.cluster_of(i);
            if (part.cluster_size(u) < 2) continue;
            CandidateSet cands;
            for (const auto r : all.ids()) {
                if (r != u) cands.insert(r);
            }
            // Exhaustive oracle over delta_move.
            bool found = false;
            std::uint32_t best_v = 0;
            double best_gain = 0.0;
            for (const auto v : cands.ids()) {
                const double gain = delta_move(data, part, i, v);
                if (!found || gain > best_gain) {
                    found = true;
                    best_gain = gain;
                    best_v = v;
                }
            }
            const auto got = best_move(data, part, i, cands, Mode::boost);
            if (found && best_gain > 0.0) {
                REQUIRE(got.has_value());
                CHECK(got->target == best_v);
                CHECK(got->gain == doctest::Approx(best_gain).epsilon(1e-12));
            } else {
                CHECK(!got.has_value());
            }
        }
    }
}

TEST_CASE("best_move traditional moves only strictly nearer") {
    // Cluster 0: two points around x=0; cluster 1: two points around x=10.
    const Dataset data(4, 1, {0.0f, 1.0f, 9.0f, 11.0f});
    const Partition part(data, {0, 0, 1, 1}, 2);
    CandidateSet other;
    other.insert(1);

    // Sample 1 (x=1): own centroid 0.5 (dist 0.25), other centroid 10 (dist 81).
    CHECK(!best_move(data, part, 1, other, Mode::traditional).has_value());

    // A sample parked far right in cluster 0 prefers cluster 1's centroid.
    const Dataset data2(4, 1, {0.0f, 8.0f, 9.0f, 11.0f});
    const Partition part2(data2, {0, 0, 1, 1}, 2);
    const auto proposal = best_move(data2, part2, 1, other, Mode::traditional);
    REQUIRE(proposal.has_value());
    CHECK(proposal->target == 1);
    // Gain is the squared-distance reduction: own centroid 4 -> dist 16;
    // target centroid 10 -> dist 4.
    CHECK(proposal->gain == doctest::Approx(12.0).epsilon(1e-12));
}

TEST_CASE("gk_means with k=1 accepts no moves") {
    const auto data = testutil::random_dataset(40, 3, 9);
    const auto graph = brute_force_knn(data, 5);
    GkMeansStats stats;
    const Partition part = gk_means(data, 1, graph, basic_config(1, 4), nullptr, &stats);
    CHECK(part.k() == 1);
    CHECK(part.cluster_size(0) == 40);
    CHECK(stats.moves_accepted == 0);
}

TEST_CASE("gk_means matches the Lloyd oracle on separated blobs") {
    // 4 tight blobs; best of 10 Lloyd restarts is the effective optimum.
    const Mixture mix = gen_mixture(400, 2, 4, 0.01, 2026);
    const auto graph = brute_force_knn(mix.data, 20);
    const Partition part = gk_means(mix.data, 4, graph, basic_config(4, 11));
    const double gk_distortion = distortion(mix.data, part);

    double best_lloyd = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const double value = distortion(mix.data, lloyd_restart(mix.data, 4, seed));
        best_lloyd = std::min(best_lloyd, value);
    }
    CHECK(gk_distortion <= best_lloyd * 1.01);
}

TEST_CASE("gk_means trace is monotone and converges") {
    const Mixture mix = gen_mixture(500, 4, 10, 0.05, 77);
    const auto graph = brute_force_knn(mix.data, 10);
    MetricsTrace trace;
    GkMeansStats stats;
    Config config = basic_config(10, 5);
    const Partition part = gk_means(mix.data, 10, graph, config, &trace, &stats);

    REQUIRE(trace.rows.size() >= 2);
    CHECK(trace.rows.front().iteration == 0);
    for (std::size_t t = 1; t < trace.rows.size(); ++t) {
        const auto& prev = trace.rows[t - 1];
        const auto& row = trace.rows[t];
        CHECK(row.iteration == prev.iteration + 1);
        CHECK(row.elapsed_seconds >= prev.elapsed_seconds);
        CHECK(row.distance_evals >= prev.distance_evals);
        // Boost mode: distortion never increases along the trace.
        CHECK(row.distortion <= prev.distortion * (1.0 + 1e-12) + 1e-15);
    }
    // Converged: the final pass accepted no moves (or the cap was hit).
    if (trace.rows.size() < config.max_iter + 1u) {
        CHECK(trace.rows.back().moves_accepted == 0);
    }
    // Each pass costs at most n * (1 + kappa) candidate evaluations.
    const std::uint64_t pass_budget =
        stats.passes * mix.data.size() * (1 + graph.kappa());
    CHECK(stats.distance_evals - trace.rows.front().distance_evals <= pass_budget);

    // All k clusters stay populated.
    for (std::uint32_t r = 0; r < part.k(); ++r) CHECK(part.cluster_size(r) >= 1);
}

TEST_CASE("gk_means objective only rises across accepted moves") {
    const auto data = testutil::random_dataset(200, 4, 13);
    const auto graph = brute_force_knn(data, 8);
    MetricsTrace trace;
    const Partition part = gk_means(data, 12, graph, basic_config(12, 21), &trace);
    const double final_objective = objective_value(data, part);
    std::vector<std::uint32_t> assignment(part.assignment().begin(), part.assignment().end());
    CHECK(testutil::rel_diff(final_objective, testutil::naive_objective(data, assignment, 12)) <
          1e-9);
    // Distortion at the end is no worse than at initialization.
    CHECK(trace.rows.back().distortion <= trace.rows.front().distortion * (1.0 + 1e-12));
}

TEST_CASE("gk_means max_iter caps the pass count") {
    const auto data = testutil::random_dataset(300, 4, 17);
    const auto graph = brute_force_knn(data, 10);
    Config config = basic_config(20, 3);
    config.max_iter = 2;
    GkMeansStats stats;
    gk_means(data, 20, graph, config, nullptr, &stats);
    CHECK(stats.passes <= 2);
}

TEST_CASE("gk_means is deterministic per seed") {
    const auto data = testutil::random_dataset(250, 5, 19);
    const auto graph = brute_force_knn(data, 8);
    const Partition a = gk_means(data, 15, graph, basic_config(15, 40));
    const Partition b = gk_means(data, 15, graph, basic_config(15, 40));
    const Partition c = gk_means(data, 15, graph, basic_config(15, 41));
    bool same_ab = true, same_ac = true;
    for (std::size_t i = 0; i < data.size(); ++i) {
        same_ab = same_ab && a.cluster_of(i) == b.cluster_of(i);
        same_ac = same_ac && a.cluster_of(i) == c.cluster_of(i);
    }
    CHECK(same_ab);
    CHECK_FALSE(same_ac);
}

TEST_CASE("gk_means warm start reuses the supplied partition") {
    const auto data = testutil::random_dataset(120, 3, 23);
    const auto graph = brute_force_knn(data, 6);
    std::mt19937_64 gen(5);
    const Partition init = two_means_tree(data, 8, gen);

    Config config = basic_config(8, 99);
    config.warm_start = true;
    config.max_iter = 1;
    MetricsTrace trace;
    gk_means(data, 8, graph, config, &trace, nullptr, &init);
    // The iteration-0 row reflects the warm partition, not a fresh tree.
    CHECK(trace.rows.front().distortion ==
          doctest::Approx(distortion(data, init)).epsilon(1e-12));

    Config mismatched = config;
    const Partition wrong_k = two_means_tree(data, 5, gen);
    CHECK_THROWS_AS(gk_means(data, 8, graph, mismatched, nullptr, nullptr, &wrong_k),
                    std::invalid_argument);
}

TEST_CASE("exact graph never loses to a random graph") {
    // Qualitative graph-quality correlation, 100 seeded trials.
    int exact_wins = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const Mixture mix = gen_mixture(300, 4, 10, 0.08, 3000 + trial);
        const auto exact = brute_force_knn(mix.data, 10);
        std::mt19937_64 gen(4000 + trial);
        const auto random_graph = random_graph_init(mix.data, 10, gen);

        const Partition with_exact =
            gk_means(mix.data, 10, exact, basic_config(10, 5000 + trial));
        const Partition with_random =
            gk_means(mix.data, 10, random_graph, basic_config(10, 5000 + trial));
        if (distortion(mix.data, with_exact) <= distortion(mix.data, with_random) + 1e-12) {
            ++exact_wins;
        }
    }
    CHECK(exact_wins >= 95);
}
