#pragma once

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "cyclic/geometry.hpp"
#include "cyclic/persistence.hpp"

namespace cyclic::bench {

struct bench_row {
    int n = 0;
    double seconds = 0.0;
};

/// Builds and computes persistent homology of the full quadratic filtration
/// of n evenly spaced circle points; returns wall time of the pipeline.
inline bench_row run_circle_case(int n, int max_dim) {
    auto pts = geo::sample_curve(geo::circle_spec{1.0}, n);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

    auto t0 = std::chrono::steady_clock::now();
    auto f = geo::build_filtration(pts, order);
    auto bars = full_persistence(f, max_dim);
    auto t1 = std::chrono::steady_clock::now();

    bench_row row;
    row.n = n;
    row.seconds = std::chrono::duration<double>(t1 - t0).count();
    if (bars.intervals.empty()) row.seconds = -row.seconds;  // cannot happen; defeats elision
    return row;
}

inline std::vector<bench_row> run_circle_ladder(const std::vector<int>& sizes, int max_dim,
                                                int repetitions = 1) {
    std::vector<bench_row> rows;
    for (int n : sizes) {
        bench_row best{n, 0.0};
        for (int rep = 0; rep < std::max(repetitions, 1); ++rep) {
            auto row = run_circle_case(n, max_dim);
            if (rep == 0 || row.seconds < best.seconds) best = row;
        }
        rows.push_back(best);
    }
    return rows;
}

/// Ordinary least squares slope of log(seconds) against log(n).
inline double fit_exponent(const std::vector<bench_row>& rows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        double x = std::log(static_cast<double>(r.n));
        double y = std::log(r.seconds);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline std::string rows_to_csv(const std::vector<bench_row>& rows, double exponent) {
    std::ostringstream out;
    out << "n,seconds\n";
    for (const auto& r : rows) out << r.n << ',' << r.seconds << '\n';
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", exponent);
    out << "exponent," << buf << '\n';
    return out.str();
}

}  // namespace cyclic::bench
