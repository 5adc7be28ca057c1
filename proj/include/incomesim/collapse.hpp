#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "incomesim/errors.hpp"
#include "incomesim/pid.hpp"

namespace incomesim {

namespace detail {

struct LogCurve {
    std::vector<double> lx, ly; // log income, log density, lx ascending

    double interp(double x) const {
        auto it = std::lower_bound(lx.begin(), lx.end(), x);
        if (it == lx.begin()) return ly.front();
        if (it == lx.end()) return ly.back();
        std::size_t i = static_cast<std::size_t>(it - lx.begin());
        double t = (x - lx[i - 1]) / (lx[i] - lx[i - 1]);
        return ly[i - 1] + t * (ly[i] - ly[i - 1]);
    }
};

inline LogCurve log_curve(const DensityTable& d) {
    LogCurve c;
    for (const auto& r : d.rows)
        if (r.density > 0 && r.mean > 0) {
            c.lx.push_back(std::log(r.mean));
            c.ly.push_back(std::log(r.density));
        }
    if (c.lx.size() < 2) throw InvalidData("density table needs >= 2 positive bins");
    return c;
}

} // namespace detail

/// Mean absolute log-density difference between two tables over a shared
/// log-income grid (linear interpolation in log-log space). Zero means the
/// curves coincide where they overlap.
inline double collapse_distance(const DensityTable& a, const DensityTable& b,
                                int grid_points = 129) {
    auto ca = detail::log_curve(a);
    auto cb = detail::log_curve(b);
    double lo = std::max(ca.lx.front(), cb.lx.front());
    double hi = std::min(ca.lx.back(), cb.lx.back());
    if (!(lo < hi)) throw DisjointSupport("density tables have no overlapping income support");
    double sum = 0;
    for (int i = 0; i < grid_points; ++i) {
        double x = lo + (hi - lo) * i / (grid_points - 1);
        sum += std::abs(ca.interp(x) - cb.interp(x));
    }
    return sum / grid_points;
}

struct SeriesComparison {
    struct Row {
        int year;
        double ours, reference, diff; // diff = ours - reference
    };
    std::vector<Row> rows;
    int jump_year = 0;     // later year of the largest consecutive move in reference
    double jump_size = 0;  // magnitude of that move
};

/// Per-year differences over the overlapping years, plus the largest
/// year-over-year jump in the reference series.
inline SeriesComparison compare_series(const std::map<int, double>& ours,
                                       const std::map<int, double>& reference) {
    SeriesComparison out;
    for (const auto& [year, g] : ours) {
        auto it = reference.find(year);
        if (it != reference.end()) out.rows.push_back({year, g, it->second, g - it->second});
    }
    if (out.rows.empty()) throw NoOverlap("series share no years");
    double prev = 0;
    bool have_prev = false;
    int prev_year = 0;
    for (const auto& [year, g] : reference) {
        if (have_prev && year == prev_year + 1) {
            double jump = std::abs(g - prev);
            if (jump > out.jump_size) {
                out.jump_size = jump;
                out.jump_year = year;
            }
        }
        prev = g;
        prev_year = year;
        have_prev = true;
    }
    return out;
}

} // namespace incomesim
