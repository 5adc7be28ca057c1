#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "incomesim/errors.hpp"
#include "incomesim/pid.hpp"

namespace incomesim {

/// Two algebra conventions for the Pareto index k. Paper mode reproduces the
/// published estimator numbers built on the mean formula x_av = (k+1)x_m/k;
/// Consistent mode follows the pdf k x_m^k / x^(k+1), whose mean is
/// k x_m / (k-1). They differ by exactly one in the open-end estimator.
enum class KConvention { Paper, Consistent };

struct ParetoTail {
    double x_m = 1.0;
    double k = 1.35;
    KConvention convention = KConvention::Paper;

    /// Mean of the tail distribution above x_m under the active convention.
    double mean() const {
        if (!(x_m > 0)) throw InvalidData("Pareto x_m must be positive");
        if (convention == KConvention::Paper) {
            if (!(k > 0)) throw NonFiniteMean("Paper-mode mean needs k > 0");
            return (k + 1.0) * x_m / k;
        }
        if (!(k > 1)) throw NonFiniteMean("Pareto mean requires k > 1");
        return k * x_m / (k - 1.0);
    }

    /// Conditional mean above a cut >= x_m (memoryless in the scale).
    double mean_above(double a) const {
        ParetoTail t{a, k, convention};
        return t.mean();
    }
};

struct TailSlice {
    double pop_fraction = 0;     // share of the tail population in [a, b)
    double income_fraction = 0;  // share of the tail income in [a, b)
    double conditional_mean = 0; // mean income within [a, b)
};

/// Exact integrals of pdf(x) = k x_m^k / x^(k+1) over [a, b); b may be open.
inline TailSlice pareto_tail_stats(const ParetoTail& tail, double a,
                                   std::optional<double> b = std::nullopt) {
    const double k = tail.k, xm = tail.x_m;
    if (!(k > 1)) throw NonFiniteMean("tail integrals require k > 1");
    if (a < xm || (b && *b < a)) throw InvalidData("need x_m <= a <= b");
    if (b && *b == a) return {0.0, 0.0, a};

    auto pow_ = [](double x, double e) { return std::pow(x, e); };
    double pop = pow_(xm / a, k) - (b ? pow_(xm / *b, k) : 0.0);
    double inc = pow_(xm, k - 1) * (pow_(a, 1 - k) - (b ? pow_(*b, 1 - k) : 0.0));
    double inc_abs = k / (k - 1) * pow_(xm, k) * (pow_(a, 1 - k) - (b ? pow_(*b, 1 - k) : 0.0));
    return {pop, inc, pop > 0 ? inc_abs / pop : a};
}

/// Pareto index from the reported mean of an open-ended bin.
inline double estimate_k_open_end(double x_m, double x_av, KConvention conv) {
    if (!(x_m > 0)) throw InvalidData("x_m must be positive");
    if (!(x_av > x_m)) throw DegenerateMean("open-end mean must exceed the bin lower edge");
    return conv == KConvention::Paper ? x_m / (x_av - x_m) : x_av / (x_av - x_m);
}

struct RegressionFit {
    double slope = 0;
    double intercept = 0;
    double k = 0;
};

namespace detail {
inline RegressionFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    RegressionFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}
} // namespace detail

/// Unweighted log-log regression of density on bin mean income over closed
/// bins lying entirely above `threshold`. The density of Eq-consistent
/// Pareto data falls as x^-(k+1); the paper converts slope to k by
/// subtracting 2 instead.
inline RegressionFit estimate_k_regression(const DensityTable& density, double threshold,
                                           KConvention conv) {
    std::vector<double> lx, ly;
    for (const auto& r : density.rows)
        if (r.lower >= threshold && r.density > 0) {
            lx.push_back(std::log(r.mean));
            ly.push_back(std::log(r.density));
        }
    if (lx.size() < 3)
        throw InsufficientTailBins("need at least 3 closed bins above the threshold, have " +
                                   std::to_string(lx.size()));
    auto f = detail::least_squares(lx, ly);
    f.k = std::abs(f.slope) - (conv == KConvention::Paper ? 2.0 : 1.0);
    return f;
}

/// Semi-log least squares of density on mean income below `upper_limit`;
/// returns the (negative) exponential index per income unit.
inline double fit_exponential(const DensityTable& density, double upper_limit) {
    std::vector<double> xs, ys;
    for (const auto& r : density.rows)
        if (r.upper <= upper_limit && r.density > 0) {
            xs.push_back(r.mean);
            ys.push_back(std::log(r.density));
        }
    if (xs.size() < 3)
        throw InsufficientBins("need at least 3 closed bins below the limit, have " +
                               std::to_string(xs.size()));
    return detail::least_squares(xs, ys).slope;
}

} // namespace incomesim
