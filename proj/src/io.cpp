#include "gkm/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#include "gkm/objective.hpp"

namespace gkm {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, std::uint64_t offset,
                       const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what + " (byte offset " +
                             std::to_string(offset) + ")");
}

std::uint32_t decode_u32(const unsigned char* b) {
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void encode_u32(std::uint32_t v, unsigned char* b) {
    b[0] = static_cast<unsigned char>(v & 0xff);
    b[1] = static_cast<unsigned char>((v >> 8) & 0xff);
    b[2] = static_cast<unsigned char>((v >> 16) & 0xff);
    b[3] = static_cast<unsigned char>((v >> 24) & 0xff);
}

// Reads a whole record-per-row vector file of 4-byte payload words.
std::pair<std::size_t, std::vector<std::uint32_t>> read_vec_words(
    const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path.string() + ": cannot open for reading");

    std::vector<std::uint32_t> words;
    std::size_t cols = 0;
    std::uint64_t offset = 0;
    unsigned char buf[4];

    for (;;) {
        in.read(reinterpret_cast<char*>(buf), 4);
        if (in.gcount() == 0 && in.eof()) break;  // clean record boundary
        if (in.gcount() != 4) fail(path, offset, "truncated record header");
        const auto raw = static_cast<std::int32_t>(decode_u32(buf));
        if (raw < 1) fail(path, offset, "non-positive column count " + std::to_string(raw));
        const auto c = static_cast<std::size_t>(raw);
        if (cols == 0) {
            cols = c;
        } else if (c != cols) {
            fail(path, offset,
                 "inconsistent column count " + std::to_string(c) + " (expected " +
                     std::to_string(cols) + ")");
        }
        offset += 4;
        for (std::size_t j = 0; j < cols; ++j) {
            in.read(reinterpret_cast<char*>(buf), 4);
            if (in.gcount() != 4) fail(path, offset, "truncated record payload");
            words.push_back(decode_u32(buf));
            offset += 4;
        }
    }
    if (cols == 0) fail(path, 0, "empty file (need at least one record)");
    return {cols, std::move(words)};
}

void write_vec_words(const std::filesystem::path& path, std::size_t rows, std::size_t cols,
                     const std::uint32_t* words) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument(path.string() + ": refusing to write an empty vector file");
    }
    if (cols > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
        throw std::invalid_argument(path.string() + ": column count does not fit int32");
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    unsigned char buf[4];
    for (std::size_t i = 0; i < rows; ++i) {
        encode_u32(static_cast<std::uint32_t>(cols), buf);
        out.write(reinterpret_cast<const char*>(buf), 4);
        for (std::size_t j = 0; j < cols; ++j) {
            encode_u32(words[i * cols + j], buf);
            out.write(reinterpret_cast<const char*>(buf), 4);
        }
    }
    out.flush();
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace

FloatMatrix read_fvecs_matrix(const std::filesystem::path& path) {
    auto [cols, words] = read_vec_words(path);
    FloatMatrix m;
    m.cols = cols;
    m.rows = words.size() / cols;
    m.values.resize(words.size());
    for (std::size_t p = 0; p < words.size(); ++p) m.values[p] = std::bit_cast<float>(words[p]);
    return m;
}

void write_fvecs_matrix(const std::filesystem::path& path, const FloatMatrix& m) {
    if (m.values.size() != m.rows * m.cols) {
        throw std::invalid_argument(path.string() + ": matrix shape does not match payload");
    }
    std::vector<std::uint32_t> words(m.values.size());
    for (std::size_t p = 0; p < m.values.size(); ++p) {
        words[p] = std::bit_cast<std::uint32_t>(m.values[p]);
    }
    write_vec_words(path, m.rows, m.cols, words.data());
}

IntMatrix read_ivecs_matrix(const std::filesystem::path& path) {
    auto [cols, words] = read_vec_words(path);
    IntMatrix m;
    m.cols = cols;
    m.rows = words.size() / cols;
    m.values.resize(words.size());
    for (std::size_t p = 0; p < words.size(); ++p) {
        m.values[p] = static_cast<std::int32_t>(words[p]);
    }
    return m;
}

void write_ivecs_matrix(const std::filesystem::path& path, const IntMatrix& m) {
    if (m.values.size() != m.rows * m.cols) {
        throw std::invalid_argument(path.string() + ": matrix shape does not match payload");
    }
    std::vector<std::uint32_t> words(m.values.size());
    for (std::size_t p = 0; p < m.values.size(); ++p) {
        words[p] = static_cast<std::uint32_t>(m.values[p]);
    }
    write_vec_words(path, m.rows, m.cols, words.data());
}

Dataset read_fvecs(const std::filesystem::path& path) {
    FloatMatrix m = read_fvecs_matrix(path);
    return Dataset(m.rows, m.cols, std::move(m.values));
}

void write_fvecs(const std::filesystem::path& path, const Dataset& data) {
    FloatMatrix m;
    m.rows = data.size();
    m.cols = data.dim();
    m.values = data.values();
    write_fvecs_matrix(path, m);
}

void write_partition(const std::filesystem::path& path, const Partition& part) {
    IntMatrix m;
    m.rows = part.size();
    m.cols = 1;
    m.values.reserve(part.size());
    for (std::size_t i = 0; i < part.size(); ++i) {
        m.values.push_back(static_cast<std::int32_t>(part.cluster_of(i)));
    }
    write_ivecs_matrix(path, m);
}

std::vector<std::uint32_t> read_partition_labels(const std::filesystem::path& path) {
    IntMatrix m = read_ivecs_matrix(path);
    if (m.cols != 1) {
        throw std::runtime_error(path.string() + ": expected one label per record, got " +
                                 std::to_string(m.cols));
    }
    std::vector<std::uint32_t> labels;
    labels.reserve(m.rows);
    for (const std::int32_t v : m.values) {
        if (v < 0) throw std::runtime_error(path.string() + ": negative cluster label");
        labels.push_back(static_cast<std::uint32_t>(v));
    }
    return labels;
}

void write_graph(const std::filesystem::path& ids_path, const KnnGraph& graph) {
    IntMatrix ids;
    ids.rows = graph.size();
    ids.cols = graph.kappa();
    ids.values.reserve(ids.rows * ids.cols);
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (const NeighborEntry& e : graph.row(i)) {
            ids.values.push_back(static_cast<std::int32_t>(e.id));
        }
    }
    write_ivecs_matrix(ids_path, ids);
}

void write_graph_distances(const std::filesystem::path& dists_path, const KnnGraph& graph) {
    FloatMatrix dists;
    dists.rows = graph.size();
    dists.cols = graph.kappa();
    dists.values.reserve(dists.rows * dists.cols);
    for (std::size_t i = 0; i < graph.size(); ++i) {
        for (const NeighborEntry& e : graph.row(i)) {
            dists.values.push_back(static_cast<float>(e.sq_dist));
        }
    }
    write_fvecs_matrix(dists_path, dists);
}

KnnGraph read_graph(const Dataset& data, const std::filesystem::path& ids_path) {
    IntMatrix ids = read_ivecs_matrix(ids_path);
    if (ids.rows != data.size()) {
        throw std::runtime_error(ids_path.string() + ": graph has " + std::to_string(ids.rows) +
                                 " rows but the dataset has " + std::to_string(data.size()));
    }
    std::vector<NeighborEntry> entries;
    entries.reserve(ids.rows * ids.cols);
    std::vector<NeighborEntry> row(ids.cols);
    for (std::size_t i = 0; i < ids.rows; ++i) {
        for (std::size_t p = 0; p < ids.cols; ++p) {
            const std::int32_t raw = ids.values[i * ids.cols + p];
            if (raw < 0 || static_cast<std::size_t>(raw) >= data.size()) {
                throw std::runtime_error(ids_path.string() + ": row " + std::to_string(i) +
                                         " references invalid id " + std::to_string(raw));
            }
            const auto id = static_cast<std::uint32_t>(raw);
            row[p] = {id, squared_distance(data.row(i), data.row(id))};
        }
        std::sort(row.begin(), row.end(), neighbor_less);
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return KnnGraph(ids.rows, static_cast<std::uint32_t>(ids.cols), std::move(entries));
}

void write_trace_csv(const std::filesystem::path& path, const MetricsTrace& trace) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    trace.write_csv(out);
    out.flush();
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace gkm
