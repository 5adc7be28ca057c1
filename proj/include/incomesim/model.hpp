#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "incomesim/economy.hpp"
#include "incomesim/errors.hpp"

namespace incomesim {

inline constexpr int kGridSide = 29;      // relative capability/means values 2..30
inline constexpr int kGridSize = kGridSide * kGridSide;
inline constexpr double kGridMax = 30.0;

/// Calibrated constants of the income-evolution model. `alpha` is the
/// normalized dissipation factor (alpha' = alpha/L_max) and is tied to
/// `start_year`: rebasing to another start year rescales it so the physical
/// decay rate alpha/Lambda_min(t) is unchanged.
struct ModelParams {
    double alpha = 0.086;
    int start_year = 1960;
    double c_decay = 0.72;           // relative income level C retained at age A
    double a_decay = 64.0;           // age A
    int tcr_anchor_year = 2005;
    double tcr_anchor_age = 55.0;    // critical age at the anchor year
    double pareto_threshold0 = 0.43; // M_P at start_year, model units
    double k_pareto = 1.35;
    double boost = 1.33;             // supercritical extra-income factor
    double unit_dollars = 120000.0;  // dollars per unit of same-year maximum income
    int work_start_age = 15;

    void validate() const {
        if (!(alpha > 0)) throw InvalidData("alpha must be positive");
        if (!(c_decay > 0 && c_decay < 1)) throw InvalidData("C must lie in (0,1)");
        if (!(a_decay > tcr_anchor_age)) throw InvalidData("A must exceed the critical age");
        if (!(k_pareto > 1)) throw InvalidData("k must exceed 1");
        if (!(boost >= 1)) throw InvalidData("boost must be >= 1");
        if (!(unit_dollars > 0)) throw InvalidData("unit_dollars must be positive");
    }

    /// Same physical model expressed in another start year's units:
    /// alpha scales with sqrt(GDP(old)/GDP(new)), incomes with the linear ratio.
    ModelParams rebased(int new_start_year, const EconomySeries& economy) const {
        ModelParams p = *this;
        p.alpha = alpha * std::sqrt(economy.real_gdp_pc(start_year) /
                                    economy.real_gdp_pc(new_start_year));
        p.start_year = new_start_year;
        return p;
    }
};

struct CapabilityEntry {
    double s_rel; // S_i / 30, i in 2..30
    double l_rel; // L_j / 30
};

/// The 29x29 grid of relative capability/means pairs, uniform weight 1/841.
struct CapabilityGrid {
    std::array<CapabilityEntry, kGridSize> entries;

    static double weight() { return 1.0 / kGridSize; }
};

inline CapabilityGrid capability_grid() {
    CapabilityGrid g;
    std::size_t n = 0;
    for (int i = 2; i <= 30; ++i)
        for (int j = 2; j <= 30; ++j)
            g.entries[n++] = {i / kGridMax, j / kGridMax};
    return g;
}

struct ScaledParams {
    double sigma_min = 1; // both scale as sqrt of real GDP pc growth
    double lambda_min = 1;
    double t_cr = 0;      // critical work experience, years
    double m_p = 0;       // Pareto threshold, model units of start_year
};

inline ScaledParams scaled_params(const ModelParams& params, const EconomySeries& economy,
                                  int year) {
    if (year > economy.last_year())
        throw YearOutOfRange("scaled_params: year " + std::to_string(year) +
                             " beyond series end");
    ScaledParams s;
    s.sigma_min = std::sqrt(economy.real_gdp_pc(year) / economy.real_gdp_pc(params.start_year));
    s.lambda_min = s.sigma_min;
    s.t_cr = (params.tcr_anchor_age - params.work_start_age) *
             std::sqrt(economy.real_gdp_pc(year) / economy.real_gdp_pc(params.tcr_anchor_year));
    s.m_p = params.pareto_threshold0 * economy.real_gdp_pc(year) /
            economy.real_gdp_pc(params.start_year);
    return s;
}

/// Post-critical decay index: alpha_l = -ln(C) / ((A - work_start) - T_cr).
inline double decay_index(double c, double a, double t_cr, double work_start_age) {
    if (!(c > 0 && c < 1)) throw InvalidData("C must lie in (0,1)");
    double window = (a - work_start_age) - t_cr;
    if (!(window > 0))
        throw DegenerateWindow("decay window A - work_start - T_cr must be positive");
    return -std::log(c) / window;
}

/// Frozen-parameter solution of the income ODE (the saturation law):
/// M' = sigma_min lambda_min s l (1 - exp(-alpha tau / (lambda_min l))).
inline double closed_form_income(double s_rel, double l_rel, double tau, double alpha,
                                 double lambda_min, double sigma_min) {
    if (tau < 0) throw InvalidData("experience must be non-negative");
    return sigma_min * lambda_min * s_rel * l_rel *
           (1.0 - std::exp(-alpha * tau / (lambda_min * l_rel)));
}

/// One group's income rate per calendar year, model units of params.start_year.
struct IncomeTrajectory {
    double s_rel = 0, l_rel = 0;
    int birth_year = 0;
    int first_year = 0; // work-start year; income there is zero
    std::vector<double> income;

    int last_year() const { return first_year + static_cast<int>(income.size()) - 1; }
    double at(int year) const {
        if (year < first_year || year > last_year())
            throw YearOutOfRange("trajectory year " + std::to_string(year) + " outside " +
                                 std::to_string(first_year) + ".." +
                                 std::to_string(last_year()));
        return income[static_cast<std::size_t>(year - first_year)];
    }
};

namespace detail {

/// Year parameters shared by every group stepping through calendar year t.
struct YearStep {
    double saturation_scale; // sigma_min(t) * lambda_min(t)
    double lambda_min;
    double t_cr;
    double alpha_l; // that year's decay index
};

inline YearStep year_step(const ModelParams& params, const EconomySeries& economy, int t) {
    YearStep y;
    double g = economy.real_gdp_pc(t) / economy.real_gdp_pc(params.start_year);
    y.saturation_scale = g;
    y.lambda_min = std::sqrt(g);
    y.t_cr = (params.tcr_anchor_age - params.work_start_age) *
             std::sqrt(economy.real_gdp_pc(t) / economy.real_gdp_pc(params.tcr_anchor_year));
    y.alpha_l = decay_index(params.c_decay, params.a_decay, y.t_cr, params.work_start_age);
    return y;
}

/// Advance one group's income across calendar year t (experience tau ->
/// tau+1). Pre-critical years use the exact solution of the linear ODE with
/// that year's frozen parameters; post-critical years decay by exp(-alpha_l),
/// the index that pins the relative income level C at age A.
inline double advance(double m, double tau, double s_rel, double l_rel, double alpha,
                      const YearStep& y) {
    if (tau < y.t_cr) {
        double target = y.saturation_scale * s_rel * l_rel;
        double f = std::exp(-alpha / (y.lambda_min * l_rel));
        return target + (m - target) * f;
    }
    return m * std::exp(-y.alpha_l);
}

} // namespace detail

/// Integrate Eq-(1)-style growth and post-critical decay for one capability
/// group born in `birth_year`, covering its work-start year through
/// `last_year` (default: end of the economy series).
inline IncomeTrajectory trajectory(double s_rel, double l_rel, int birth_year,
                                   const EconomySeries& economy, const ModelParams& params,
                                   int last_year = 0) {
    params.validate();
    if (last_year == 0) last_year = economy.last_year();
    if (last_year > economy.last_year())
        throw EconomyTooShort("economy series ends " + std::to_string(economy.last_year()) +
                              ", need " + std::to_string(last_year));
    IncomeTrajectory tr;
    tr.s_rel = s_rel;
    tr.l_rel = l_rel;
    tr.birth_year = birth_year;
    tr.first_year = birth_year + params.work_start_age;
    if (tr.first_year > last_year)
        throw EconomyTooShort("cohort born " + std::to_string(birth_year) +
                              " starts work after the series ends");
    tr.income.push_back(0.0);
    double m = 0.0;
    for (int t = tr.first_year; t < last_year; ++t) {
        auto step = detail::year_step(params, economy, t);
        m = detail::advance(m, static_cast<double>(t - tr.first_year), s_rel, l_rel,
                            params.alpha, step);
        tr.income.push_back(m);
    }
    return tr;
}

} // namespace incomesim
