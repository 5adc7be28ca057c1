#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "incomesim/csv.hpp"
#include "incomesim/errors.hpp"

namespace incomesim {

enum class PopulationBase { WithIncome, All15Plus };
enum class IncomeUnits { CurrentDollars, ModelUnits };

inline std::string to_string(PopulationBase b) {
    return b == PopulationBase::WithIncome ? "with_income" : "all_15plus";
}

struct Bin {
    double lower = 0;
    std::optional<double> upper;        // nullopt = open-ended
    double count = 0;
    std::optional<double> mean_income;

    bool open() const { return !upper.has_value(); }
    double width() const { return *upper - lower; }
    double center() const { return 0.5 * (lower + *upper); }
};

/// A binned personal income distribution for one calendar year. Bins are
/// left-closed right-open [lower, upper); at most one open-ended bin, last.
/// A zero-width leading bin is the zero-income population.
struct BinnedPid {
    int year = 0;
    PopulationBase population_base = PopulationBase::WithIncome;
    IncomeUnits income_units = IncomeUnits::CurrentDollars;
    std::vector<Bin> bins;

    double total_count() const {
        double t = 0;
        for (const auto& b : bins) t += b.count;
        return t;
    }

    std::size_t closed_bin_count() const {
        std::size_t n = 0;
        for (const auto& b : bins) n += b.open() ? 0 : 1;
        return n;
    }

    void validate(const std::string& ctx = "") const {
        std::string where = ctx.empty() ? "pid " + std::to_string(year) : ctx;
        if (bins.empty()) throw InvalidData("no bins (" + where + ")");
        for (std::size_t i = 0; i < bins.size(); ++i) {
            const Bin& b = bins[i];
            if (b.count < 0) throw InvalidData("negative count (" + where + ")");
            if (b.open()) {
                if (i + 1 != bins.size())
                    throw InvalidData("open bin must be last (" + where + ")");
            } else {
                bool zero_width_head = (i == 0 && b.lower == 0.0 && *b.upper == 0.0);
                if (!(b.lower < *b.upper) && !zero_width_head)
                    throw InvalidData("bin lower must be below upper (" + where + ")");
            }
            if (i > 0) {
                const Bin& p = bins[i - 1];
                double pu = p.open() ? b.lower : *p.upper; // open-before-last caught above
                if (b.lower < pu)
                    throw OverlappingBins("bins overlap at " + csv::num(b.lower) + " (" +
                                          where + ")");
            }
            if (b.mean_income) {
                if (*b.mean_income < b.lower || (!b.open() && *b.mean_income > *b.upper))
                    throw InvalidData("mean_income outside its bin (" + where + ")");
            }
        }
    }
};

/// Re-tag a with-income PID as covering all 15+ people by prepending the
/// zero-income population as a zero-width first bin.
inline BinnedPid with_zero_income_bin(const BinnedPid& pid, double total_pop) {
    if (pid.population_base != PopulationBase::WithIncome)
        throw InvalidData("with_zero_income_bin expects a WithIncome pid");
    double have = pid.total_count();
    if (total_pop < have)
        throw PopulationUnderflow("total population " + csv::num(total_pop) +
                                  " below pid count " + csv::num(have));
    BinnedPid out = pid;
    out.population_base = PopulationBase::All15Plus;
    if (total_pop == have) return out;
    Bin zero;
    zero.lower = 0;
    zero.upper = 0;
    zero.count = total_pop - have;
    zero.mean_income = 0;
    out.bins.insert(out.bins.begin(), zero);
    return out;
}

struct DensityRow {
    double lower = 0, upper = 0;
    double mean = 0;     // abscissa associated with the bin
    double density = 0;  // population fraction per income unit
};

struct DensityTable {
    int year = 0;
    std::vector<DensityRow> rows; // closed bins only
};

/// Per-bin count / (population * width). The open-ended bin has no finite
/// width and is excluded. `means` must align with the closed bins.
inline DensityTable normalize_density(const BinnedPid& pid, double population,
                                      const std::vector<double>& means) {
    if (population <= 0) throw InvalidData("population must be positive");
    DensityTable out;
    out.year = pid.year;
    std::size_t mi = 0;
    for (const auto& b : pid.bins) {
        if (b.open()) continue;
        double w = b.width();
        if (w <= 0) { ++mi; continue; } // zero-width zero bin carries no density
        out.rows.push_back({b.lower, *b.upper, means.at(mi), b.count / (population * w)});
        ++mi;
    }
    return out;
}

/// Divide the income axis (edges and means) by a positive factor.
inline BinnedPid rescale_income_axis(const BinnedPid& pid, double factor) {
    if (!(factor > 0)) throw InvalidData("rescale factor must be positive");
    BinnedPid out = pid;
    for (auto& b : out.bins) {
        b.lower /= factor;
        if (b.upper) *b.upper /= factor;
        if (b.mean_income) *b.mean_income /= factor;
    }
    return out;
}

// ---- loader ----------------------------------------------------------------

/// Reads one or more PID tables; rows are grouped by (year, population_base)
/// in file order.
inline std::vector<BinnedPid> load_pid_tables(const std::string& path) {
    auto t = csv::read(path);
    const int cy = t.column("year");
    const int cb = t.column("population_base");
    const int cl = t.column("bin_lower");
    const int cu = t.column("bin_upper");
    const int cc = t.column("count");
    const int cm = t.column("mean_income");

    std::vector<BinnedPid> out;
    auto base_of = [&](const std::string& s, const std::string& ctx) {
        if (s == "with_income") return PopulationBase::WithIncome;
        if (s == "all_15plus") return PopulationBase::All15Plus;
        throw InvalidData("unknown population_base '" + s + "' (" + ctx + ")");
    };

    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        std::string ctx = path + " row " + std::to_string(i + 2);
        int year = static_cast<int>(csv::parse_int(r.at(cy), ctx));
        PopulationBase base = base_of(r.at(cb), ctx);
        if (out.empty() || out.back().year != year || out.back().population_base != base) {
            BinnedPid p;
            p.year = year;
            p.population_base = base;
            out.push_back(p);
        }
        Bin b;
        b.lower = csv::parse_double(r.at(cl), ctx);
        b.upper = csv::parse_optional(r.at(cu), ctx);
        b.count = csv::parse_double(r.at(cc), ctx);
        b.mean_income = csv::parse_optional(r.at(cm), ctx);
        out.back().bins.push_back(b);
    }
    for (const auto& p : out) p.validate(path + " year " + std::to_string(p.year));
    return out;
}

inline std::string serialize(const std::vector<BinnedPid>& pids) {
    std::string out = "year,population_base,bin_lower,bin_upper,count,mean_income\n";
    for (const auto& p : pids)
        for (const auto& b : p.bins) {
            out += std::to_string(p.year) + ',' + to_string(p.population_base) + ',' +
                   csv::num(b.lower) + ',' + (b.upper ? csv::num(*b.upper) : "") + ',' +
                   csv::num(b.count) + ',' + (b.mean_income ? csv::num(*b.mean_income) : "") +
                   '\n';
        }
    return out;
}

} // namespace incomesim
