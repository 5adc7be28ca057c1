// Acceptance suite: runs every gate at its stated tolerance and prints one
// pass/fail line per criterion. Exit status is the number of failed gates.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "incomesim/collapse.hpp"
#include "incomesim/economy.hpp"
#include "incomesim/lorenz.hpp"
#include "incomesim/model.hpp"
#include "incomesim/pareto.hpp"
#include "incomesim/pid.hpp"
#include "incomesim/synthesis.hpp"

namespace fs = std::filesystem;
using namespace incomesim;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d  %-28s %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string dd(const std::string& f) { return (fs::path(INCOMESIM_DATA_DIR) / f).string(); }

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// ---- binned oracles (independent of the library pipeline) -----------------

BinnedPid pareto_binned(double k, int nbins) {
    const double xm = 1.0, top = 1e9;
    const double r = std::pow(top / xm, 1.0 / nbins);
    BinnedPid pid;
    double lo = xm;
    auto sf = [&](double x) { return std::pow(xm / x, k); };
    for (int i = 0; i < nbins; ++i) {
        double hi = lo * r;
        double pop = sf(lo) - sf(hi);
        double inc = k / (k - 1) * (std::pow(lo, 1 - k) - std::pow(hi, 1 - k));
        pid.bins.push_back({lo, hi, pop, inc / (std::pow(lo, -k) - std::pow(hi, -k))});
        lo = hi;
    }
    pid.bins.push_back(Bin{lo, std::nullopt, sf(lo), k * lo / (k - 1)});
    return pid;
}

BinnedPid exponential_binned(int nbins) {
    const double top = 40.0;
    BinnedPid pid;
    for (int i = 0; i < nbins; ++i) {
        double lo = top * i / nbins, hi = top * (i + 1) / nbins;
        double mean = ((lo + 1) * std::exp(-lo) - (hi + 1) * std::exp(-hi)) /
                      (std::exp(-lo) - std::exp(-hi));
        pid.bins.push_back({lo, hi, std::exp(-lo) - std::exp(-hi), mean});
    }
    pid.bins.push_back(Bin{top, std::nullopt, std::exp(-top), top + 1.0});
    return pid;
}

double binned_gini(const BinnedPid& pid) {
    return gini_trapezoid(lorenz_from_bins(pid, bin_means(pid))).value;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    auto econ = load_economy(dd("economy.csv"));
    auto ages = load_age_structure(dd("ages.csv"));
    auto fine = load_pid_tables(dd("pid_fine.csv"));
    auto crude = load_pid_tables(dd("pid_crude.csv"));
    ModelParams params;

    auto fine_of = [&](int y) -> const BinnedPid& {
        for (const auto& p : fine)
            if (p.year == y) return p;
        throw InvalidData("missing fine table");
    };
    auto crude_of = [&](int y) -> const BinnedPid& {
        for (const auto& p : crude)
            if (p.year == y) return p;
        throw InvalidData("missing crude table");
    };

    // 1. Pareto Gini oracle
    {
        auto t0 = Clock::now();
        double g = binned_gini(pareto_binned(1.35, 1000));
        double elapsed = ms_since(t0);
        double target = 1.0 / (2 * 1.35 - 1);
        bool pass = std::abs(g - target) <= 0.003 && elapsed < 1000.0;
        char buf[128];
        std::snprintf(buf, sizeof buf, "G=%.5f target=%.5f (%.0f ms)", g, target, elapsed);
        report(1, "pareto-gini-oracle", pass, buf);
    }

    // 2. Exponential Gini oracle
    {
        double g = binned_gini(exponential_binned(1000));
        bool pass = std::abs(g - 0.5) <= 0.005;
        char buf[64];
        std::snprintf(buf, sizeof buf, "G=%.5f target=0.50000", g);
        report(2, "exponential-gini-oracle", pass, buf);
    }

    // 3. Refinement monotonicity
    {
        const int n = 10000;
        std::vector<double> sample(n);
        for (int i = 0; i < n; ++i) sample[i] = -std::log(1.0 - (i + 0.5) / n);
        auto g_of = [&](int nbins) {
            BinnedPid pid;
            int per = n / nbins;
            for (int b = 0; b < nbins; ++b) {
                double lo = b == 0 ? 0.0 : sample[static_cast<std::size_t>(b * per)];
                double hi = b == nbins - 1 ? sample.back() + 1
                                           : sample[static_cast<std::size_t>((b + 1) * per)];
                double sum = 0;
                for (int i = b * per; i < (b + 1) * per; ++i)
                    sum += sample[static_cast<std::size_t>(i)];
                pid.bins.push_back({lo, hi, static_cast<double>(per), sum / per});
            }
            return binned_gini(pid);
        };
        double g10 = g_of(10), g100 = g_of(100), g1000 = g_of(1000);
        bool pass = g10 <= g100 && g100 <= g1000 && g10 < g1000;
        char buf[96];
        std::snprintf(buf, sizeof buf, "G(10)=%.5f G(100)=%.5f G(1000)=%.5f", g10, g100, g1000);
        report(3, "refinement-monotonicity", pass, buf);
    }

    // 4. Estimator reproduction
    {
        double k1 = estimate_k_open_end(100000, 176068, KConvention::Paper);
        double k2 = estimate_k_open_end(250000, 470616, KConvention::Paper);
        const int n = 200000;
        double mean = 0;
        for (int i = 0; i < n; ++i) mean += 2.0 * std::pow(1 - (i + 0.5) / n, -1 / 1.35) / n;
        double k3 = estimate_k_open_end(2.0, mean, KConvention::Consistent);
        bool pass = std::abs(k1 - 1.31) <= 0.005 && std::abs(k2 - 1.13) <= 0.005 &&
                    std::abs(k3 - 1.35) <= 0.02;
        char buf[96];
        std::snprintf(buf, sizeof buf, "paper %.4f/%.4f consistent-roundtrip %.4f", k1, k2, k3);
        report(4, "estimator-reproduction", pass, buf);
    }

    // 5. Regression conversion
    {
        DensityTable d;
        double lo = 1.0;
        for (int i = 0; i < 8; ++i) {
            double hi = lo * 1.6, mean = std::sqrt(lo * hi);
            d.rows.push_back({lo, hi, mean, std::pow(mean, -3.35)});
            lo = hi;
        }
        auto fit = estimate_k_regression(d, 0.0, KConvention::Paper);
        bool pass = std::abs(fit.slope + 3.35) <= 0.01 && std::abs(fit.k - 1.35) <= 0.01;
        char buf[64];
        std::snprintf(buf, sizeof buf, "slope=%.4f k=%.4f", fit.slope, fit.k);
        report(5, "regression-conversion", pass, buf);
    }

    // 6. Trajectory continuity and oracle
    {
        std::vector<EconomyYear> rows;
        for (int y = 1900; y <= 2060; ++y) rows.push_back({20000, 20000, 20000, 1e6, 9e5});
        EconomySeries flat(1900, std::move(rows));
        auto tr = trajectory(1.0, 1.0, 1950, flat, params);
        int w = tr.first_year;

        double cross_growth = closed_form_income(1, 1, 40, params.alpha, 1, 1);
        double cross_err = std::abs(tr.at(w + 40) - cross_growth) / cross_growth;

        double osc_err = 0;
        for (int tau : {5, 10, 20, 39}) {
            double cf = closed_form_income(1, 1, tau, params.alpha, 1, 1);
            osc_err = std::max(osc_err, std::abs(tr.at(w + tau) - cf) / cf);
        }
        double peak = 0;
        for (int y = tr.first_year; y <= tr.last_year(); ++y)
            peak = std::max(peak, tr.at(y));
        double rel64 = tr.at(1950 + 64) / peak;
        bool pass = cross_err < 1e-9 && osc_err < 1e-6 && std::abs(rel64 - 0.72) <= 1e-6;
        char buf[128];
        std::snprintf(buf, sizeof buf, "cross=%.2e oracle=%.2e C(64)=%.8f", cross_err,
                      osc_err, rel64);
        report(6, "trajectory-oracle", pass, buf);
    }

    // 7. Extra-income ratio
    {
        auto pid = synthesize_pid(2005, econ, ages, params);
        double ratio = extra_income_ratio(1.35, pid);
        bool pass = ratio >= 1.28 && ratio <= 1.38;
        char buf[64];
        std::snprintf(buf, sizeof buf, "ratio=%.4f window=[1.28,1.38]", ratio);
        report(7, "extra-income-ratio", pass, buf);
    }

    // 8. Predicted Gini series
    {
        auto t0 = Clock::now();
        std::map<int, double> series;
        for (int y = 1947; y <= 2005; ++y)
            series[y] = predicted_gini(y, econ, ages, params).value;
        double elapsed = ms_since(t0);

        double gmin = 1, gmax = 0;
        int ymin = 0, ymax = 0;
        for (auto [y, g] : series) {
            if (g < gmin) { gmin = g; ymin = y; }
            if (g > gmax) { gmax = g; ymax = y; }
        }
        bool hard = gmin > 0.50 && gmax < 0.55 && (gmax - gmin) < 0.02 && ymax >= 1958 &&
                    ymax <= 1966 && ymin >= 1986 && ymin <= 1994 && elapsed < 10000.0;
        bool soft = std::abs(series[1947] - 0.5346) <= 0.01 &&
                    std::abs(series[1962] - 0.5378) <= 0.01 &&
                    std::abs(series[1990] - 0.5238) <= 0.01 &&
                    std::abs(series[2005] - 0.5266) <= 0.01;
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "max=%.4f@%d min=%.4f@%d range=%.4f targets %.4f/%.4f/%.4f/%.4f "
                      "soft=%s (%.0f ms)",
                      gmax, ymax, gmin, ymin, gmax - gmin, series[1947], series[1962],
                      series[1990], series[2005], soft ? "yes" : "no", elapsed);
        report(8, "predicted-gini-series", hard, buf);
    }

    // 9. Zero-income inclusion
    {
        bool increases = true;
        for (int y : {1947, 1967, 1987, 2005}) {
            const auto& p = fine_of(y);
            ParetoTail tail{p.bins.back().lower, 1.35, KConvention::Paper};
            double gwi = gini_from_pid(p, kDefaultBinMeanCorrection, tail).value;
            auto aug = with_zero_income_bin(p, econ.at(y).pop_15plus);
            double gall = gini_from_pid(aug, kDefaultBinMeanCorrection, tail).value;
            if (!(gall > gwi)) increases = false;
        }
        ParetoTail tf{fine_of(1947).bins.back().lower, 1.35, KConvention::Paper};
        ParetoTail tc{crude_of(1947).bins.back().lower, 1.35, KConvention::Paper};
        double fine_all =
            gini_from_pid(with_zero_income_bin(fine_of(1947), econ.at(1947).pop_15plus),
                          kDefaultBinMeanCorrection, tf)
                .value;
        double crude_all =
            gini_from_pid(with_zero_income_bin(crude_of(1947), econ.at(1947).pop_15plus),
                          kDefaultBinMeanCorrection, tc)
                .value;
        double gap = fine_all - crude_all;
        bool pass = increases && std::abs(gap - 0.04) <= 0.01;
        char buf[96];
        std::snprintf(buf, sizeof buf, "monotone=%s 1947 crude-fine all-pop gap=%.4f",
                      increases ? "yes" : "no", gap);
        report(9, "zero-income-inclusion", pass, buf);
    }

    // 10. Collapse property
    {
        // synthetic: two tables related by a pure income scale
        BinnedPid a;
        double edges[] = {0, 500, 1200, 2000, 3000, 4500, 7000, 11000};
        for (int i = 0; i + 1 < 8; ++i) {
            double lo = edges[i], hi = edges[i + 1];
            a.bins.push_back(
                {lo, hi, std::exp(-lo / 3000.0) - std::exp(-hi / 3000.0), {}});
        }
        const double g = 4.2;
        auto b = a;
        for (auto& bin : b.bins) {
            bin.lower *= g;
            *bin.upper *= g;
        }
        auto da = normalize_density(a, a.total_count(), bin_means(a));
        auto db_back = normalize_density(rescale_income_axis(b, g), b.total_count(),
                                         bin_means(rescale_income_axis(b, g)));
        double synth = collapse_distance(da, db_back);

        const auto& p47 = crude_of(1947);
        const auto& p87 = crude_of(1987);
        auto d47 = normalize_density(p47, p47.total_count(), bin_means(p47));
        auto d87 = normalize_density(p87, p87.total_count(), bin_means(p87));
        double raw = collapse_distance(d47, d87);
        double gpi = econ.at(1987).nominal_gpi_pc_with_income /
                     econ.at(1947).nominal_gpi_pc_with_income;
        auto r87 = rescale_income_axis(p87, gpi);
        auto dr = normalize_density(r87, r87.total_count(), bin_means(r87));
        double rescaled = collapse_distance(d47, dr);

        bool pass = synth < 1e-12 && rescaled * 5.0 <= raw;
        char buf[96];
        std::snprintf(buf, sizeof buf, "synthetic=%.2e raw=%.4f rescaled=%.4f", synth, raw,
                      rescaled);
        report(10, "collapse-property", pass, buf);
    }

    // 11. Determinism of the CLI
    {
        fs::path da = fs::temp_directory_path() / "accept_det_a";
        fs::path db = fs::temp_directory_path() / "accept_det_b";
        fs::remove_all(da);
        fs::remove_all(db);
        std::string base = std::string(INCOMESIM_CLI_PATH) + " simulate --economy " +
                           dd("economy.csv") + " --ages " + dd("ages.csv") +
                           " --from 1947 --to 2005 --svg --sweep-k 1.2,1.35,1.5";
        int rc1 = std::system((base + " --jobs 4 --out " + da.string() + " >/dev/null 2>&1").c_str());
        int rc2 = std::system((base + " --jobs 1 --out " + db.string() + " >/dev/null 2>&1").c_str());
        bool pass = rc1 == 0 && rc2 == 0;
        std::string mismatch;
        if (pass)
            for (const auto& entry : fs::directory_iterator(da)) {
                auto name = entry.path().filename();
                if (slurp(entry.path()) != slurp(db / name)) {
                    pass = false;
                    mismatch = name.string();
                    break;
                }
            }
        report(11, "cli-determinism", pass,
               pass ? "byte-identical outputs across runs and job counts"
                    : "mismatch in " + mismatch);
    }

    if (failures == 0) std::printf("all acceptance criteria passed\n");
    else std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
