#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "incomesim/economy.hpp"
#include "incomesim/errors.hpp"
#include "incomesim/lorenz.hpp"
#include "incomesim/model.hpp"
#include "incomesim/pareto.hpp"

namespace incomesim {

/// Model personal income distribution for one calendar year: one weighted
/// income per (single year of age, capability group), in model units of
/// params.start_year, plus the analytic Pareto-zone summary once applied.
struct ModelPid {
    int year = 0;
    double threshold = 0;        // M_P(year), model units
    double growth_linear = 1;    // GDP(year)/GDP(start_year): same-year max income scale
    std::vector<double> incomes; // ages-major, 841 groups per age
    std::vector<double> weights; // persons per entry

    // Pareto-zone summary (filled by apply_pareto_zone)
    bool pareto_applied = false;
    bool tail_empty = false;
    double tail_count = 0;              // persons above threshold
    double tail_theoretical_income = 0; // sum of model incomes above threshold
    double tail_income = 0;             // boosted total carried by the analytic tail
    double tail_income_factor = 1;      // boost actually applied
    double k_pareto = 1.35;

    double total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }
    double threshold_dollars(double unit_dollars) const {
        return threshold / growth_linear * unit_dollars;
    }
};

/// Weighted model PID for `year`: every age present in the age structure
/// contributes count/841 persons per capability group, at that group's
/// trajectory income for the year.
inline ModelPid synthesize_pid(int year, const EconomySeries& economy, const AgeStructure& ages,
                               const ModelParams& params) {
    params.validate();
    if (year > economy.last_year())
        throw EconomyTooShort("economy series ends " + std::to_string(economy.last_year()));
    if (!ages.has_year(year))
        throw MissingAgeCounts("no age structure for year " + std::to_string(year));

    static const CapabilityGrid grid = capability_grid();
    auto sc = scaled_params(params, economy, year);

    ModelPid pid;
    pid.year = year;
    pid.threshold = sc.m_p;
    pid.growth_linear = sc.sigma_min * sc.lambda_min;
    pid.k_pareto = params.k_pareto;

    const int min_age = ages.min_age();
    const int max_age = ages.max_age(year);
    pid.incomes.reserve(static_cast<std::size_t>(max_age - min_age + 1) * kGridSize);
    pid.weights.reserve(pid.incomes.capacity());

    // shared per-calendar-year step factors: 29 growth pairs + decay factor
    struct YearFactors {
        double target_scale;              // saturation scale for the year
        double t_cr;
        double decay;                     // exp(-alpha_l)
        std::array<double, kGridSide> growth_factor_by_l;
    };
    std::map<int, YearFactors> factors;
    auto factors_for = [&](int t) -> const YearFactors& {
        auto it = factors.find(t);
        if (it == factors.end()) {
            auto st = detail::year_step(params, economy, t);
            YearFactors f;
            f.target_scale = st.saturation_scale;
            f.t_cr = st.t_cr;
            f.decay = std::exp(-st.alpha_l);
            for (int j = 0; j < kGridSide; ++j) {
                double l_rel = (j + 2) / kGridMax;
                f.growth_factor_by_l[static_cast<std::size_t>(j)] =
                    std::exp(-params.alpha / (st.lambda_min * l_rel));
            }
            it = factors.emplace(t, f).first;
        }
        return it->second;
    };

    std::vector<double> m(kGridSize);
    for (int age = min_age; age <= max_age; ++age) {
        double cnt = ages.count(year, age);
        int work_start = year - age + params.work_start_age;
        std::fill(m.begin(), m.end(), 0.0);
        for (int t = work_start; t < year; ++t) {
            const auto& f = factors_for(t);
            double tau = static_cast<double>(t - work_start);
            if (tau < f.t_cr) {
                for (int i = 0; i < kGridSide; ++i) {
                    double s_rel = (i + 2) / kGridMax;
                    for (int j = 0; j < kGridSide; ++j) {
                        double target = f.target_scale * s_rel * (j + 2) / kGridMax;
                        double& v = m[static_cast<std::size_t>(i * kGridSide + j)];
                        v = target +
                            (v - target) * f.growth_factor_by_l[static_cast<std::size_t>(j)];
                    }
                }
            } else {
                for (double& v : m) v *= f.decay;
            }
        }
        double w = cnt / kGridSize;
        for (int g = 0; g < kGridSize; ++g) {
            pid.incomes.push_back(m[static_cast<std::size_t>(g)]);
            pid.weights.push_back(w);
        }
    }
    (void)grid;
    return pid;
}

/// Replace the supercritical zone by the analytic Pareto law: membership and
/// headcount from the theoretical incomes, total tail income boosted. With no
/// group above the threshold the distribution is returned unchanged, flagged.
inline ModelPid apply_pareto_zone(const ModelPid& pid, double k, double boost) {
    if (!(k > 1)) throw InvalidData("k must exceed 1");
    if (!(boost >= 1)) throw InvalidData("boost must be >= 1");
    ModelPid out = pid;
    out.pareto_applied = true;
    out.k_pareto = k;
    out.tail_count = 0;
    out.tail_theoretical_income = 0;
    for (std::size_t i = 0; i < pid.incomes.size(); ++i)
        if (pid.incomes[i] > pid.threshold) {
            out.tail_count += pid.weights[i];
            out.tail_theoretical_income += pid.weights[i] * pid.incomes[i];
        }
    if (out.tail_count == 0) {
        out.tail_empty = true;
        out.tail_income = 0;
        out.tail_income_factor = 1;
        return out;
    }
    out.tail_empty = false;
    out.tail_income_factor = boost;
    out.tail_income = boost * out.tail_theoretical_income;
    return out;
}

/// Ratio of the Eq.-(6) tail total income (tail mean under `conv`, matched
/// headcount) to the theoretical model tail income. Fig. 16's 1.33 at k=1.35
/// corresponds to the paper's mean algebra, the default here.
inline double extra_income_ratio(double k, const ModelPid& pid,
                                 KConvention conv = KConvention::Paper) {
    if (!(k > 1)) throw InvalidData("k must exceed 1");
    ModelPid adj = pid.pareto_applied ? pid : apply_pareto_zone(pid, k, 1.0);
    if (adj.tail_empty || adj.tail_count == 0)
        throw EmptyTail("no model income above the threshold in year " +
                        std::to_string(pid.year));
    ParetoTail tail{pid.threshold, k, conv};
    return adj.tail_count * tail.mean() / adj.tail_theoretical_income;
}

/// Exact Gini of the adjusted distribution: trapezoid over the weighted
/// below-threshold incomes plus the closed-form Lorenz segment of the
/// Pareto tail (its integral is k/(2k-1) of the segment box).
inline GiniEstimate model_gini(const ModelPid& adjusted) {
    if (!adjusted.pareto_applied) throw InvalidData("apply_pareto_zone first");
    std::vector<std::size_t> order;
    std::vector<double> xs, ws;
    xs.reserve(adjusted.incomes.size());
    ws.reserve(adjusted.incomes.size());
    for (std::size_t i = 0; i < adjusted.incomes.size(); ++i)
        if (adjusted.incomes[i] <= adjusted.threshold) {
            xs.push_back(adjusted.incomes[i]);
            ws.push_back(adjusted.weights[i]);
        }
    order.resize(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

    const double N = adjusted.total_weight();
    double below_income = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) below_income += xs[i] * ws[i];
    const double I = below_income + adjusted.tail_income;
    if (!(N > 0) || !(I > 0)) throw InvalidData("degenerate model distribution");

    double area = 0, cp = 0, ci = 0;
    for (std::size_t idx : order) {
        double x0 = cp / N, y0 = ci / I;
        cp += ws[idx];
        ci += xs[idx] * ws[idx];
        area += (cp / N - x0) * (y0 + ci / I) / 2.0;
    }
    if (!adjusted.tail_empty) {
        double p_t = adjusted.tail_count / N;
        double s_t = adjusted.tail_income / I;
        double y_b = ci / I;
        double k = adjusted.k_pareto;
        area += p_t * (y_b + s_t * (k - 1) / (2 * k - 1));
    }
    GiniEstimate g;
    g.value = 1.0 - 2.0 * area;
    g.method = GiniMethod::ExactModel;
    g.population_base = PopulationBase::All15Plus;
    g.year = adjusted.year;
    return g;
}

inline GiniEstimate predicted_gini(int year, const EconomySeries& economy,
                                   const AgeStructure& ages, const ModelParams& params) {
    auto pid = synthesize_pid(year, economy, ages, params);
    return model_gini(apply_pareto_zone(pid, params.k_pareto, params.boost));
}

struct SensitivityRow {
    double k;
    double gini;
};

/// Fig.-15-style sweep: predicted Gini recomputed per k, everything else
/// (threshold, boost, synthesized incomes) held fixed.
inline std::vector<SensitivityRow> gini_sensitivity(int year, const std::vector<double>& ks,
                                                    const EconomySeries& economy,
                                                    const AgeStructure& ages,
                                                    const ModelParams& params) {
    auto pid = synthesize_pid(year, economy, ages, params);
    std::vector<SensitivityRow> out;
    out.reserve(ks.size());
    for (double k : ks)
        out.push_back({k, model_gini(apply_pareto_zone(pid, k, params.boost)).value});
    return out;
}

/// Binned export of an adjusted model PID (ModelUnits): equal-width bins
/// below the threshold and the analytic tail sliced geometrically above it,
/// ending in an open bin. Tail means carry the boosted income scale.
inline BinnedPid to_binned(const ModelPid& adjusted, int below_bins = 50, int tail_bins = 12) {
    if (!adjusted.pareto_applied) throw InvalidData("apply_pareto_zone first");
    BinnedPid out;
    out.year = adjusted.year;
    out.population_base = PopulationBase::All15Plus;
    out.income_units = IncomeUnits::ModelUnits;

    const double thr = adjusted.threshold;
    std::vector<double> cnt(static_cast<std::size_t>(below_bins), 0.0);
    std::vector<double> inc(static_cast<std::size_t>(below_bins), 0.0);
    for (std::size_t i = 0; i < adjusted.incomes.size(); ++i) {
        double x = adjusted.incomes[i];
        if (x > thr) continue;
        auto b = std::min<std::size_t>(static_cast<std::size_t>(x / thr * below_bins),
                                       static_cast<std::size_t>(below_bins - 1));
        cnt[b] += adjusted.weights[i];
        inc[b] += adjusted.weights[i] * x;
    }
    for (int b = 0; b < below_bins; ++b) {
        Bin bin;
        bin.lower = thr * b / below_bins;
        bin.upper = thr * (b + 1) / below_bins;
        bin.count = cnt[static_cast<std::size_t>(b)];
        if (bin.count > 0) bin.mean_income = inc[static_cast<std::size_t>(b)] / bin.count;
        out.bins.push_back(bin);
    }

    if (!adjusted.tail_empty) {
        ParetoTail tail{thr, adjusted.k_pareto, KConvention::Consistent};
        // rescale tail means so their weighted total equals the boosted income
        double scale = adjusted.tail_income / (adjusted.tail_count * tail.mean());
        double ratio = std::pow(8.0, 1.0 / tail_bins);
        double lo = thr;
        for (int b = 0; b < tail_bins; ++b) {
            double hi = lo * ratio;
            auto sl = pareto_tail_stats(tail, lo, hi);
            Bin bin;
            bin.lower = lo;
            bin.upper = hi;
            bin.count = adjusted.tail_count * sl.pop_fraction;
            bin.mean_income = std::clamp(sl.conditional_mean * scale, lo, hi);
            out.bins.push_back(bin);
            lo = hi;
        }
        auto sl = pareto_tail_stats(tail, lo);
        Bin open;
        open.lower = lo;
        open.count = adjusted.tail_count * sl.pop_fraction;
        open.mean_income = std::max(sl.conditional_mean * scale, lo);
        out.bins.push_back(open);
    }
    return out;
}

} // namespace incomesim
