#pragma once

// Shared helpers for the test suite: independent reference oracles (long
// double, definitional scans — deliberately not sharing code paths with the
// library), instance generators, and small statistics utilities.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "gkm/dataset.hpp"
#include "gkm/knn_graph.hpp"
#include "gkm/partition.hpp"
#include "gkm/rng.hpp"

namespace testutil {

// ---- reference oracles -----------------------------------------------------

// Composite objective recomputed from raw membership in long double.
inline double naive_objective(const gkm::Dataset& data,
                              std::span<const std::uint32_t> assignment, std::uint32_t k) {
    const std::size_t d = data.dim();
    std::vector<long double> comp(static_cast<std::size_t>(k) * d, 0.0L);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const auto x = data.row(i);
        long double* c = comp.data() + static_cast<std::size_t>(assignment[i]) * d;
        for (std::size_t j = 0; j < d; ++j) c[j] += static_cast<long double>(x[j]);
        ++sizes[assignment[i]];
    }
    long double total = 0.0L;
    for (std::uint32_t r = 0; r < k; ++r) {
        if (sizes[r] == 0) continue;
        const long double* c = comp.data() + static_cast<std::size_t>(r) * d;
        long double sq = 0.0L;
        for (std::size_t j = 0; j < d; ++j) sq += c[j] * c[j];
        total += sq / static_cast<long double>(sizes[r]);
    }
    return static_cast<double>(total);
}

// Average distortion recomputed from raw membership in long double.
inline double naive_distortion(const gkm::Dataset& data,
                               std::span<const std::uint32_t> assignment, std::uint32_t k) {
    const std::size_t d = data.dim();
    std::vector<long double> comp(static_cast<std::size_t>(k) * d, 0.0L);
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const auto x = data.row(i);
        long double* c = comp.data() + static_cast<std::size_t>(assignment[i]) * d;
        for (std::size_t j = 0; j < d; ++j) c[j] += static_cast<long double>(x[j]);
        ++sizes[assignment[i]];
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const auto x = data.row(i);
        const std::uint32_t r = assignment[i];
        const long double* c = comp.data() + static_cast<std::size_t>(r) * d;
        for (std::size_t j = 0; j < d; ++j) {
            const long double diff =
                static_cast<long double>(x[j]) - c[j] / static_cast<long double>(sizes[r]);
            acc += diff * diff;
        }
    }
    return static_cast<double>(acc / static_cast<long double>(assignment.size()));
}

// Exact neighbor lists by full sort per row (independent of the library's
// bounded-heap implementation).
inline std::vector<std::vector<gkm::NeighborEntry>> naive_knn(const gkm::Dataset& data,
                                                              std::uint32_t kappa) {
    const std::size_t n = data.size();
    std::vector<std::vector<gkm::NeighborEntry>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<gkm::NeighborEntry> all;
        all.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            long double acc = 0.0L;
            const auto a = data.row(i);
            const auto b = data.row(j);
            for (std::size_t t = 0; t < data.dim(); ++t) {
                const long double diff =
                    static_cast<long double>(a[t]) - static_cast<long double>(b[t]);
                acc += diff * diff;
            }
            all.push_back({static_cast<std::uint32_t>(j), static_cast<double>(acc)});
        }
        std::sort(all.begin(), all.end(), gkm::neighbor_less);
        all.resize(kappa);
        rows[i] = std::move(all);
    }
    return rows;
}

// Builds a graph from explicit per-row neighbor ids, computing true distances.
inline gkm::KnnGraph graph_from_ids(const gkm::Dataset& data,
                                    const std::vector<std::vector<std::uint32_t>>& rows) {
    const std::uint32_t kappa = static_cast<std::uint32_t>(rows.at(0).size());
    std::vector<gkm::NeighborEntry> entries;
    entries.reserve(rows.size() * kappa);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<gkm::NeighborEntry> row;
        for (const auto id : rows[i]) {
            const auto a = data.row(i);
            const auto b = data.row(id);
            double acc = 0.0;
            for (std::size_t t = 0; t < data.dim(); ++t) {
                const double diff = static_cast<double>(a[t]) - static_cast<double>(b[t]);
                acc += diff * diff;
            }
            row.push_back({id, acc});
        }
        std::sort(row.begin(), row.end(), gkm::neighbor_less);
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return gkm::KnnGraph(rows.size(), kappa, std::move(entries));
}

// ---- instance generators ---------------------------------------------------

inline gkm::Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed,
                                   float lo = -1.0f, float hi = 1.0f) {
    std::mt19937_64 gen(seed);
    std::vector<float> values(n * d);
    for (auto& v : values) {
        v = lo + static_cast<float>(gkm::rng::unit_double(gen)) * (hi - lo);
    }
    return gkm::Dataset(n, d, std::move(values));
}

// Random assignment guaranteeing every cluster is non-empty.
inline std::vector<std::uint32_t> random_assignment(std::size_t n, std::uint32_t k,
                                                    std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::uint32_t> assignment(n);
    for (std::uint32_t r = 0; r < k; ++r) assignment[r] = r;  // pin one sample per cluster
    for (std::size_t i = k; i < n; ++i) {
        assignment[i] = static_cast<std::uint32_t>(gkm::rng::below(gen, k));
    }
    gkm::rng::shuffle(assignment, gen);
    return assignment;
}

// ---- statistics -------------------------------------------------------------

// Spearman rank correlation (average ranks on ties).
inline double spearman(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    const auto ranks = [n](std::span<const double> v) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return v[a] < v[b];
        });
        std::vector<double> rank(n);
        std::size_t p = 0;
        while (p < n) {
            std::size_t q = p;
            while (q + 1 < n && v[idx[q + 1]] == v[idx[p]]) ++q;
            const double avg = (static_cast<double>(p) + static_cast<double>(q)) / 2.0 + 1.0;
            for (std::size_t t = p; t <= q; ++t) rank[idx[t]] = avg;
            p = q + 1;
        }
        return rank;
    };
    const auto rx = ranks(xs);
    const auto ry = ranks(ys);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    return cov / std::sqrt(vx * vy);
}

inline double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace testutil
