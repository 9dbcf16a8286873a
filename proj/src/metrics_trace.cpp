#include "gkm/metrics_trace.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>
#include <string>

namespace gkm {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

void MetricsTrace::write_csv(std::ostream& out) const {
    out << csv_header << '\n';
    for (const TraceRow& row : rows) {
        out << row.iteration << ',' << format_double(row.elapsed_seconds) << ','
            << format_double(row.distortion) << ',';
        if (row.recall_at_1.has_value()) out << format_double(*row.recall_at_1);
        out << ',' << row.moves_accepted << ',' << row.distance_evals << '\n';
    }
}

}  // namespace gkm
