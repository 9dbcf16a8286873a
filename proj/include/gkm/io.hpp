#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gkm/dataset.hpp"
#include "gkm/knn_graph.hpp"
#include "gkm/metrics_trace.hpp"
#include "gkm/partition.hpp"

namespace gkm {

// Record-per-row binary vector files: each record is a little-endian int32
// column count followed by that many little-endian 4-byte payload values
// (float32 / int32). Every record must repeat the same column count.
// Malformed input (empty file, truncated record, inconsistent or
// non-positive column count) raises std::runtime_error naming the file and
// byte offset.

struct FloatMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<float> values;  // rows x cols, row-major
};

struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int32_t> values;
};

FloatMatrix read_fvecs_matrix(const std::filesystem::path& path);
void write_fvecs_matrix(const std::filesystem::path& path, const FloatMatrix& m);
IntMatrix read_ivecs_matrix(const std::filesystem::path& path);
void write_ivecs_matrix(const std::filesystem::path& path, const IntMatrix& m);

Dataset read_fvecs(const std::filesystem::path& path);
void write_fvecs(const std::filesystem::path& path, const Dataset& data);

// Cluster labels as a one-column int vector file.
void write_partition(const std::filesystem::path& path, const Partition& part);
std::vector<std::uint32_t> read_partition_labels(const std::filesystem::path& path);

// Neighbor ids as a kappa-column int file; optionally the squared distances
// as a parallel kappa-column float file (float32, nearest).
void write_graph(const std::filesystem::path& ids_path, const KnnGraph& graph);
void write_graph_distances(const std::filesystem::path& dists_path, const KnnGraph& graph);

// Rebuilds a graph from persisted neighbor ids, recomputing exact squared
// distances against `data` (the distance file is redundant by design).
KnnGraph read_graph(const Dataset& data, const std::filesystem::path& ids_path);

void write_trace_csv(const std::filesystem::path& path, const MetricsTrace& trace);

}  // namespace gkm
