#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "incomesim/csv.hpp"
#include "incomesim/errors.hpp"

namespace incomesim {

struct EconomyYear {
    double real_gdp_pc = 0;                 // constant dollars / person / year
    double nominal_gdp_pc = 0;              // current dollars / 15+ person / year
    double nominal_gpi_pc_with_income = 0;  // GPI / population with income
    double pop_15plus = 0;
    double pop_with_income = 0;
};

enum class GrowthLaw { Linear, SquareRoot };

/// Year-indexed macro series driving the model. Values are immutable once
/// loaded. Years before the first observed one are served by back-
/// extrapolating real GDP per capita at the earliest observed year-over-year
/// growth rate, which is what cohorts entering work before the series start
/// need; years past the last observed one are an error.
class EconomySeries {
  public:
    EconomySeries() = default;
    EconomySeries(int first_year, std::vector<EconomyYear> rows)
        : first_(first_year), rows_(std::move(rows)) {
        validate();
    }

    int first_year() const { return first_; }
    int last_year() const { return first_ + static_cast<int>(rows_.size()) - 1; }
    bool contains(int year) const { return year >= first_ && year <= last_year(); }

    const EconomyYear& at(int year) const {
        if (!contains(year))
            throw YearOutOfRange("year " + std::to_string(year) + " outside " +
                                 std::to_string(first_) + ".." + std::to_string(last_year()));
        return rows_[static_cast<std::size_t>(year - first_)];
    }

    /// Real GDP per capita, extended below the first observed year.
    double real_gdp_pc(int year) const {
        if (year >= first_) return at(year).real_gdp_pc;
        double r = rows_.size() > 1 ? rows_[1].real_gdp_pc / rows_[0].real_gdp_pc : 1.0;
        return rows_[0].real_gdp_pc / std::pow(r, first_ - year);
    }

    const std::vector<EconomyYear>& rows() const { return rows_; }

  private:
    void validate() {
        if (rows_.empty()) throw InvalidData("economy series is empty");
        int y = first_;
        for (const auto& r : rows_) {
            for (double v : {r.real_gdp_pc, r.nominal_gdp_pc, r.nominal_gpi_pc_with_income,
                             r.pop_15plus, r.pop_with_income})
                if (!(v > 0.0))
                    throw NonPositiveValue("non-positive value in economy row for year " +
                                           std::to_string(y));
            if (r.pop_with_income > r.pop_15plus)
                throw InvalidData("pop_with_income exceeds pop_15plus in year " +
                                  std::to_string(y));
            ++y;
        }
    }

    int first_ = 0;
    std::vector<EconomyYear> rows_;
};

/// Cumulative growth factor of real GDP per capita between two years.
/// Linear for quantities that track GDP (income scale, Pareto threshold),
/// SquareRoot for Sigma_min / Lambda_min / T_cr.
inline double growth_factor(const EconomySeries& s, int t0, int t, GrowthLaw law) {
    if (t0 > s.last_year() || t > s.last_year())
        throw YearOutOfRange("growth_factor: year beyond series end " +
                             std::to_string(s.last_year()));
    double ratio = s.real_gdp_pc(t) / s.real_gdp_pc(t0);
    return law == GrowthLaw::Linear ? ratio : std::sqrt(ratio);
}

struct CoverageRow {
    int year;
    double gpi_over_gdp;         // GPI / GDP, both as aggregates
    double with_income_fraction; // pop_with_income / pop_15plus
};

inline std::vector<CoverageRow> coverage_ratios(const EconomySeries& s) {
    std::vector<CoverageRow> out;
    out.reserve(s.rows().size());
    for (int y = s.first_year(); y <= s.last_year(); ++y) {
        const auto& r = s.at(y);
        out.push_back({y,
                       r.nominal_gpi_pc_with_income * r.pop_with_income /
                           (r.nominal_gdp_pc * r.pop_15plus),
                       r.pop_with_income / r.pop_15plus});
    }
    return out;
}

/// Single-year-of-age population counts per calendar year (ages 15+).
class AgeStructure {
  public:
    AgeStructure() = default;
    AgeStructure(std::map<int, std::vector<double>> counts, int min_age)
        : counts_(std::move(counts)), min_age_(min_age) {
        for (const auto& [year, v] : counts_) {
            if (v.empty()) throw InvalidData("no age rows for year " + std::to_string(year));
            for (double c : v)
                if (c < 0) throw InvalidData("negative count in year " + std::to_string(year));
        }
    }

    bool has_year(int year) const { return counts_.count(year) != 0; }
    int min_age() const { return min_age_; }
    int max_age(int year) const {
        return min_age_ + static_cast<int>(row(year).size()) - 1;
    }
    double count(int year, int age) const {
        const auto& v = row(year);
        if (age < min_age_ || age >= min_age_ + static_cast<int>(v.size()))
            throw MissingAgeCounts("no count for age " + std::to_string(age) + " in year " +
                                   std::to_string(year));
        return v[static_cast<std::size_t>(age - min_age_)];
    }
    double total(int year) const {
        double t = 0;
        for (double c : row(year)) t += c;
        return t;
    }
    const std::map<int, std::vector<double>>& years() const { return counts_; }

  private:
    const std::vector<double>& row(int year) const {
        auto it = counts_.find(year);
        if (it == counts_.end())
            throw MissingAgeCounts("no age structure for year " + std::to_string(year));
        return it->second;
    }

    std::map<int, std::vector<double>> counts_;
    int min_age_ = 15;
};

// ---- loaders -------------------------------------------------------------

inline EconomySeries load_economy(const std::string& path) {
    auto t = csv::read(path);
    const int cy = t.column("year");
    const int cr = t.column("real_gdp_pc");
    const int cn = t.column("nominal_gdp_pc");
    const int cg = t.column("nominal_gpi_pc_with_income");
    const int cp = t.column("pop_15plus");
    const int cw = t.column("pop_with_income");

    int first = 0, prev = 0;
    std::vector<EconomyYear> rows;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        std::string ctx = path + " row " + std::to_string(i + 2);
        int year = static_cast<int>(csv::parse_int(r.at(cy), ctx));
        if (rows.empty()) first = year;
        else if (year != prev + 1)
            throw NonContiguousYears("economy years not contiguous at " +
                                         std::to_string(prev + 1) + " (" + ctx + ")",
                                     prev + 1);
        prev = year;
        EconomyYear e;
        e.real_gdp_pc = csv::parse_double(r.at(cr), ctx);
        e.nominal_gdp_pc = csv::parse_double(r.at(cn), ctx);
        e.nominal_gpi_pc_with_income = csv::parse_double(r.at(cg), ctx);
        e.pop_15plus = csv::parse_double(r.at(cp), ctx);
        e.pop_with_income = csv::parse_double(r.at(cw), ctx);
        for (double v : {e.real_gdp_pc, e.nominal_gdp_pc, e.nominal_gpi_pc_with_income,
                         e.pop_15plus, e.pop_with_income})
            if (!(v > 0.0)) throw NonPositiveValue("non-positive value (" + ctx + ")");
        rows.push_back(e);
    }
    return EconomySeries(first, std::move(rows));
}

inline std::string serialize(const EconomySeries& s) {
    std::string out = "year,real_gdp_pc,nominal_gdp_pc,nominal_gpi_pc_with_income,"
                      "pop_15plus,pop_with_income\n";
    for (int y = s.first_year(); y <= s.last_year(); ++y) {
        const auto& r = s.at(y);
        out += std::to_string(y) + ',' + csv::num(r.real_gdp_pc) + ',' +
               csv::num(r.nominal_gdp_pc) + ',' + csv::num(r.nominal_gpi_pc_with_income) + ',' +
               csv::num(r.pop_15plus) + ',' + csv::num(r.pop_with_income) + '\n';
    }
    return out;
}

inline AgeStructure load_age_structure(const std::string& path) {
    auto t = csv::read(path);
    const int cy = t.column("year");
    const int ca = t.column("age");
    const int cc = t.column("count");

    std::map<int, std::vector<std::pair<int, double>>> raw;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        std::string ctx = path + " row " + std::to_string(i + 2);
        int year = static_cast<int>(csv::parse_int(r.at(cy), ctx));
        int age = static_cast<int>(csv::parse_int(r.at(ca), ctx));
        double cnt = csv::parse_double(r.at(cc), ctx);
        if (age < 15) throw InvalidData("age below 15 (" + ctx + ")");
        if (cnt < 0) throw InvalidData("negative count (" + ctx + ")");
        raw[year].push_back({age, cnt});
    }
    std::map<int, std::vector<double>> counts;
    int min_age = 15;
    for (auto& [year, v] : raw) {
        std::sort(v.begin(), v.end());
        min_age = v.front().first;
        std::vector<double> row;
        int expect = min_age;
        for (auto& [age, cnt] : v) {
            if (age != expect)
                throw InvalidData("ages not contiguous in year " + std::to_string(year) +
                                  " at age " + std::to_string(expect) + " (" + path + ")");
            row.push_back(cnt);
            ++expect;
        }
        counts[year] = std::move(row);
    }
    return AgeStructure(std::move(counts), min_age);
}

inline std::string serialize(const AgeStructure& a) {
    std::string out = "year,age,count\n";
    for (const auto& [year, v] : a.years())
        for (std::size_t i = 0; i < v.size(); ++i)
            out += std::to_string(year) + ',' + std::to_string(a.min_age() + static_cast<int>(i)) +
                   ',' + csv::num(v[i]) + '\n';
    return out;
}

} // namespace incomesim
