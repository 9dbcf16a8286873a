#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace gkm {

// One benchmark observation. moves_accepted counts moves during that
// iteration; distance_evals is cumulative since the start of the run
// (parallel to elapsed_seconds).
struct TraceRow {
    std::uint64_t iteration = 0;
    double elapsed_seconds = 0.0;
    double distortion = 0.0;
    std::optional<double> recall_at_1;  // empty cell in CSV when absent
    std::uint64_t moves_accepted = 0;
    std::uint64_t distance_evals = 0;
};

struct MetricsTrace {
    static constexpr const char* csv_header =
        "iteration,elapsed_seconds,distortion,recall_at_1,moves_accepted,distance_evals";

    std::vector<TraceRow> rows;

    void add(TraceRow row) { rows.push_back(row); }
    void write_csv(std::ostream& out) const;
};

// Shortest decimal form that round-trips the exact double value.
std::string format_double(double value);

}  // namespace gkm
