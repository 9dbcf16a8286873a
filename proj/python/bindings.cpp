// Python bindings: numpy-centric wrappers around the clustering core.
// Arrays cross the boundary as float32 (data), uint32 (labels, neighbor ids).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkm/baselines.hpp"
#include "gkm/config.hpp"
#include "gkm/dataset.hpp"
#include "gkm/graph_build.hpp"
#include "gkm/graph_kmeans.hpp"
#include "gkm/knn_graph.hpp"
#include "gkm/objective.hpp"
#include "gkm/partition.hpp"
#include "gkm/synthetic.hpp"
#include "gkm/two_means.hpp"

namespace py = pybind11;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;
using IdArray = py::array_t<std::uint32_t, py::array::c_style | py::array::forcecast>;

gkm::Dataset to_dataset(const FloatArray& x) {
    if (x.ndim() != 2) throw std::invalid_argument("data must be a 2-D array");
    const auto n = static_cast<std::size_t>(x.shape(0));
    const auto d = static_cast<std::size_t>(x.shape(1));
    const float* ptr = x.data();
    return gkm::Dataset(n, d, std::vector<float>(ptr, ptr + n * d));
}

std::vector<std::uint32_t> to_labels(const IdArray& labels, std::size_t n) {
    if (labels.ndim() != 1 || static_cast<std::size_t>(labels.shape(0)) != n) {
        throw std::invalid_argument("labels must be a 1-D array with one entry per sample");
    }
    const std::uint32_t* ptr = labels.data();
    return {ptr, ptr + n};
}

gkm::Partition to_partition(const gkm::Dataset& data, const IdArray& labels) {
    const auto assignment = to_labels(labels, data.size());
    std::uint32_t k = 0;
    for (const std::uint32_t v : assignment) k = std::max(k, v + 1);
    return gkm::Partition(data, assignment, k);
}

gkm::KnnGraph to_graph(const gkm::Dataset& data, const IdArray& ids) {
    if (ids.ndim() != 2) throw std::invalid_argument("graph ids must be a 2-D array");
    const auto n = static_cast<std::size_t>(ids.shape(0));
    const auto kappa = static_cast<std::uint32_t>(ids.shape(1));
    if (n != data.size()) throw std::invalid_argument("graph row count != sample count");
    const std::uint32_t* ptr = ids.data();
    std::vector<gkm::NeighborEntry> entries(n * kappa);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t p = 0; p < kappa; ++p) {
            const std::uint32_t id = ptr[i * kappa + p];
            if (id >= n) throw std::invalid_argument("neighbor id out of range");
            entries[i * kappa + p] = {id, gkm::squared_distance(data.row(i), data.row(id))};
        }
        std::sort(entries.begin() + static_cast<std::ptrdiff_t>(i * kappa),
                  entries.begin() + static_cast<std::ptrdiff_t>((i + 1) * kappa),
                  gkm::neighbor_less);
    }
    return gkm::KnnGraph(n, kappa, std::move(entries));
}

py::array_t<std::uint32_t> make_u32_1d(std::size_t n) {
    return py::array_t<std::uint32_t>(
        std::vector<py::ssize_t>{static_cast<py::ssize_t>(n)});
}

py::array_t<std::uint32_t> labels_array(const gkm::Partition& part) {
    auto out = make_u32_1d(part.size());
    std::uint32_t* ptr = out.mutable_data();
    for (std::size_t i = 0; i < part.size(); ++i) ptr[i] = part.cluster_of(i);
    return out;
}

IdArray graph_ids_array(const gkm::KnnGraph& graph) {
    IdArray out({static_cast<py::ssize_t>(graph.size()),
                 static_cast<py::ssize_t>(graph.kappa())});
    std::uint32_t* ptr = out.mutable_data();
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (std::uint32_t p = 0; p < graph.kappa(); ++p) {
            ptr[i * graph.kappa() + p] = graph.row(i)[p].id;
        }
    }
    return out;
}

gkm::Config make_config(std::uint32_t k, std::uint32_t kappa, std::uint32_t xi,
                        std::uint32_t tau, std::uint32_t max_iter, std::uint64_t seed,
                        const std::string& mode) {
    gkm::Config config;
    config.k = k;
    config.kappa = kappa;
    config.xi = xi;
    config.tau = tau;
    config.max_iter = max_iter;
    config.seed = seed;
    config.mode = gkm::parse_mode(mode);
    return config;
}

}  // namespace

PYBIND11_MODULE(_gkmeans, m) {
    m.doc() = "graph-accelerated incremental k-means";

    m.def(
        "gen_mixture",
        [](std::size_t n, std::size_t d, std::uint32_t centers, double sigma,
           std::uint64_t seed) {
            const gkm::Mixture mix = gkm::gen_mixture(n, d, centers, sigma, seed);
            FloatArray data({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(d)});
            const auto& values = mix.data.values();
            std::copy(values.begin(), values.end(), data.mutable_data());
            auto labels = make_u32_1d(n);
            std::copy(mix.labels.begin(), mix.labels.end(), labels.mutable_data());
            return py::make_tuple(data, labels);
        },
        py::arg("n"), py::arg("d"), py::arg("centers"), py::arg("sigma"), py::arg("seed") = 0,
        "Balanced Gaussian mixture; returns (data, true_labels).");

    m.def(
        "brute_force_knn",
        [](const FloatArray& x, std::uint32_t kappa) {
            const gkm::Dataset data = to_dataset(x);
            return graph_ids_array(gkm::brute_force_knn(data, kappa));
        },
        py::arg("data"), py::arg("kappa"),
        "Exact nearest-neighbor ids, shape (n, kappa), nearest first.");

    m.def(
        "build_knn_graph",
        [](const FloatArray& x, std::uint32_t kappa, std::uint32_t xi, std::uint32_t tau,
           std::uint64_t seed) {
            const gkm::Dataset data = to_dataset(x);
            const gkm::Config config = make_config(0, kappa, xi, tau, 1, seed, "boost");
            return graph_ids_array(gkm::build_knn_graph(data, kappa, config));
        },
        py::arg("data"), py::arg("kappa"), py::arg("xi") = 50, py::arg("tau") = 10,
        py::arg("seed") = 0, "Approximate nearest-neighbor ids, shape (n, kappa).");

    m.def(
        "two_means_tree",
        [](const FloatArray& x, std::uint32_t k, std::uint64_t seed) {
            const gkm::Dataset data = to_dataset(x);
            std::mt19937_64 gen(seed);
            return labels_array(gkm::two_means_tree(data, k, gen));
        },
        py::arg("data"), py::arg("k"), py::arg("seed") = 0,
        "Balanced bisecting initialization; returns labels.");

    m.def(
        "cluster",
        [](const FloatArray& x, std::uint32_t k, const std::optional<IdArray>& graph_ids,
           const std::string& mode, std::uint32_t kappa, std::uint32_t xi, std::uint32_t tau,
           std::uint32_t max_iter, std::uint64_t seed) {
            const gkm::Dataset data = to_dataset(x);
            gkm::Config config = make_config(k, kappa, xi, tau, max_iter, seed, mode);
            config.validate(data.size());
            std::mt19937_64 master(seed);
            const std::uint64_t graph_seed = master();
            const std::uint64_t cluster_seed = master();
            gkm::KnnGraph graph = [&] {
                if (graph_ids.has_value()) return to_graph(data, *graph_ids);
                gkm::Config build_config = config;
                build_config.seed = graph_seed;
                return gkm::build_knn_graph(data, kappa, build_config);
            }();
            config.seed = cluster_seed;
            return labels_array(gkm::gk_means(data, k, graph, config));
        },
        py::arg("data"), py::arg("k"), py::arg("graph_ids") = py::none(),
        py::arg("mode") = "boost", py::arg("kappa") = 50, py::arg("xi") = 50,
        py::arg("tau") = 10, py::arg("max_iter") = 30, py::arg("seed") = 0,
        "Graph-accelerated k-means; builds a graph when graph_ids is None. Returns labels.");

    m.def(
        "distortion",
        [](const FloatArray& x, const IdArray& labels) {
            const gkm::Dataset data = to_dataset(x);
            return gkm::distortion(data, to_partition(data, labels));
        },
        py::arg("data"), py::arg("labels"),
        "Mean squared distance of samples to their cluster centroid.");

    m.def(
        "objective_value",
        [](const FloatArray& x, const IdArray& labels) {
            const gkm::Dataset data = to_dataset(x);
            return gkm::objective_value(data, to_partition(data, labels));
        },
        py::arg("data"), py::arg("labels"),
        "Composite objective (sum of squared composite norms over cluster sizes).");

    m.def(
        "recall_at_1",
        [](const FloatArray& x, const IdArray& approx_ids, const IdArray& exact_ids) {
            const gkm::Dataset data = to_dataset(x);
            return gkm::recall_at_1(to_graph(data, approx_ids), to_graph(data, exact_ids));
        },
        py::arg("data"), py::arg("approx_ids"), py::arg("exact_ids"),
        "Fraction of samples whose true nearest neighbor appears in their list.");
}
