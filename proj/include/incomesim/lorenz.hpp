#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "incomesim/errors.hpp"
#include "incomesim/pareto.hpp"
#include "incomesim/pid.hpp"

namespace incomesim {

struct LorenzPoint {
    double x = 0; // cumulative population share
    double y = 0; // cumulative income share
};

/// Piecewise-linear Lorenz curve from (0,0) to (1,1), incomes ascending.
struct LorenzCurve {
    std::vector<LorenzPoint> points;
};

enum class GiniMethod { Trapezoid, TrapezoidPlusParetoTail, ExactModel };

inline std::string to_string(GiniMethod m) {
    switch (m) {
        case GiniMethod::Trapezoid: return "trapezoid";
        case GiniMethod::TrapezoidPlusParetoTail: return "trapezoid_pareto_tail";
        default: return "exact_model";
    }
}

struct GiniEstimate {
    double value = 0;
    GiniMethod method = GiniMethod::Trapezoid;
    PopulationBase population_base = PopulationBase::WithIncome;
    int year = 0;
};

/// Default dimensionless offset of within-bin mean from the bin center,
/// measured on the 2000-2005 reports (deviation / bin width).
inline constexpr double kDefaultBinMeanCorrection = -0.12;

/// Mean income per closed bin: the reported mean when present, otherwise the
/// center shifted by correction*width, clamped into the bin.
inline std::vector<double> bin_means(const BinnedPid& pid,
                                     double correction = kDefaultBinMeanCorrection) {
    std::vector<double> out;
    for (const auto& b : pid.bins) {
        if (b.open()) continue;
        if (b.mean_income) {
            out.push_back(*b.mean_income);
        } else if (b.width() == 0) {
            out.push_back(b.lower);
        } else {
            double m = b.center() + correction * b.width();
            out.push_back(std::clamp(m, b.lower, *b.upper));
        }
    }
    return out;
}

/// Cumulative population/income shares from a binned PID. The open-ended bin
/// needs either a reported mean or a Pareto tail to price it; the tail's
/// conditional mean above the bin's lower edge is used.
inline LorenzCurve lorenz_from_bins(const BinnedPid& pid, const std::vector<double>& means,
                                    std::optional<ParetoTail> tail = std::nullopt) {
    if (means.size() != pid.closed_bin_count())
        throw InvalidData("means not aligned with closed bins");

    std::vector<double> pops, incs;
    std::size_t mi = 0;
    for (const auto& b : pid.bins) {
        double mean;
        if (b.open()) {
            if (b.mean_income) mean = *b.mean_income;
            else if (tail) mean = tail->mean_above(b.lower);
            else if (b.count == 0) mean = b.lower; // nothing to price
            else
                throw OpenBinUnresolved("open bin at " + csv::num(b.lower) +
                                        " has no mean and no tail model");
        } else {
            mean = means[mi++];
        }
        pops.push_back(b.count);
        incs.push_back(b.count * mean);
    }
    double N = 0, I = 0;
    for (std::size_t i = 0; i < pops.size(); ++i) { N += pops[i]; I += incs[i]; }
    if (!(N > 0) || !(I > 0)) throw InvalidData("empty or zero-income distribution");

    LorenzCurve c;
    c.points.push_back({0, 0});
    double cp = 0, ci = 0;
    for (std::size_t i = 0; i < pops.size(); ++i) {
        if (pops[i] == 0 && incs[i] == 0) continue;
        cp += pops[i];
        ci += incs[i];
        c.points.push_back({cp / N, ci / I});
    }
    c.points.back() = {1.0, 1.0};
    return c;
}

/// G = 1 - sum (X_i - X_{i-1}) (Y_{i-1} + Y_i), the trapezoid approximation
/// over consecutive Lorenz points.
inline GiniEstimate gini_trapezoid(const LorenzCurve& curve) {
    if (curve.points.size() < 2) throw InvalidData("Lorenz curve needs at least two points");
    double s = 0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        s += (b.x - a.x) * (a.y + b.y);
    }
    GiniEstimate g;
    g.value = 1.0 - s;
    g.method = GiniMethod::Trapezoid;
    return g;
}

/// Convenience: full binned-table pipeline.
inline GiniEstimate gini_from_pid(const BinnedPid& pid, double correction,
                                  std::optional<ParetoTail> tail = std::nullopt) {
    auto g = gini_trapezoid(lorenz_from_bins(pid, bin_means(pid, correction), tail));
    g.method = tail ? GiniMethod::TrapezoidPlusParetoTail : GiniMethod::Trapezoid;
    g.population_base = pid.population_base;
    g.year = pid.year;
    return g;
}

} // namespace incomesim
