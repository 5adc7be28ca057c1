// Command-line driver: simulation, empirical Gini estimation, Pareto fits,
// collapse diagnostics and series comparison over the CSV schemas in data/.
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "incomesim/collapse.hpp"
#include "incomesim/economy.hpp"
#include "incomesim/lorenz.hpp"
#include "incomesim/model.hpp"
#include "incomesim/pareto.hpp"
#include "incomesim/pid.hpp"
#include "incomesim/svg.hpp"
#include "incomesim/synthesis.hpp"

namespace fs = std::filesystem;
using namespace incomesim;

namespace {

std::string data_default(const std::string& file) {
    const char* dir = std::getenv("INCOMESIM_DATA");
    if (!dir) return "";
    return (fs::path(dir) / file).string();
}

std::string resolve(const std::string& flag_value, const std::string& fallback_name,
                    const std::string& flag_name) {
    if (!flag_value.empty()) return flag_value;
    std::string d = data_default(fallback_name);
    if (d.empty())
        throw InvalidData("missing --" + flag_name + " and INCOMESIM_DATA is not set");
    return d;
}

KConvention parse_convention(const std::string& s) {
    if (s == "paper") return KConvention::Paper;
    if (s == "consistent") return KConvention::Consistent;
    throw InvalidData("unknown convention '" + s + "' (expected paper|consistent)");
}

std::map<int, double> load_gini_series(const std::string& path) {
    auto t = csv::read(path);
    int cy = t.column("year"), cg = t.column("gini");
    std::map<int, double> out;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        out[static_cast<int>(csv::parse_int(t.rows[i].at(cy), path))] =
            csv::parse_double(t.rows[i].at(cg), path);
    return out;
}

void run_parallel(std::size_t n_items, int jobs, const std::function<void(std::size_t)>& work) {
    if (jobs < 1) jobs = 1;
    if (jobs == 1) {
        for (std::size_t i = 0; i < n_items; ++i) work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) work(i);
        });
    for (auto& th : pool) th.join();
}

std::string pid_model_csv(const BinnedPid& pid) {
    std::string out = "year,population_base,bin_lower,bin_upper,count,mean_income\n";
    for (const auto& b : pid.bins)
        out += std::to_string(pid.year) + ",all_15plus," + csv::fixed6(b.lower) + ',' +
               (b.upper ? csv::fixed6(*b.upper) : "") + ',' + csv::fixed6(b.count) + ',' +
               (b.mean_income ? csv::fixed6(*b.mean_income) : "") + '\n';
    return out;
}

struct SimulateOpts {
    std::string economy, ages, out = ".", svg_empirical;
    int from = 1947, to = 2005, jobs = 1;
    double k = 1.35, alpha = 0.086, boost = 1.33, correction = kDefaultBinMeanCorrection;
    bool svg = false;
    std::string sweep_k; // comma-separated k values -> sensitivity.csv
};

int run_simulate(const SimulateOpts& o) {
    if (!(o.k > 1)) throw InvalidData("k must exceed 1");
    auto economy = load_economy(resolve(o.economy, "economy.csv", "economy"));
    auto ages = load_age_structure(resolve(o.ages, "ages.csv", "ages"));
    if (o.from > o.to) throw InvalidData("--from must not exceed --to");

    ModelParams params;
    params.k_pareto = o.k;
    params.alpha = o.alpha;
    params.boost = o.boost;
    params.validate();

    std::vector<int> years;
    for (int y = o.from; y <= o.to; ++y) years.push_back(y);
    std::vector<double> gini(years.size());
    std::vector<std::string> pid_files(years.size());
    run_parallel(years.size(), o.jobs, [&](std::size_t i) {
        auto pid = synthesize_pid(years[i], economy, ages, params);
        auto adj = apply_pareto_zone(pid, params.k_pareto, params.boost);
        gini[i] = model_gini(adj).value;
        pid_files[i] = pid_model_csv(to_binned(adj));
    });

    fs::create_directories(o.out);
    std::string table = "year,gini\n";
    for (std::size_t i = 0; i < years.size(); ++i)
        table += std::to_string(years[i]) + ',' + csv::fixed6(gini[i]) + '\n';
    csv::write_file((fs::path(o.out) / "gini_predicted.csv").string(), table);
    for (std::size_t i = 0; i < years.size(); ++i)
        csv::write_file(
            (fs::path(o.out) / ("pid_model_" + std::to_string(years[i]) + ".csv")).string(),
            pid_files[i]);

    if (!o.sweep_k.empty()) {
        std::vector<double> ks;
        std::stringstream ss(o.sweep_k);
        std::string item;
        while (std::getline(ss, item, ',')) ks.push_back(csv::parse_double(item, "--sweep-k"));
        for (double k : ks)
            if (!(k > 1)) throw InvalidData("k must exceed 1");
        auto rows = gini_sensitivity(o.to, ks, economy, ages, params);
        std::string s = "k,gini\n";
        for (const auto& r : rows) s += csv::fixed6(r.k) + ',' + csv::fixed6(r.gini) + '\n';
        csv::write_file((fs::path(o.out) / "sensitivity.csv").string(), s);
    }

    if (o.svg) {
        SvgLineChart chart("Gini coefficient, personal incomes", "year", "Gini");
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < years.size(); ++i)
            pts.push_back({static_cast<double>(years[i]), gini[i]});
        chart.add_series("predicted", pts);
        if (!o.svg_empirical.empty()) {
            std::vector<std::pair<double, double>> emp;
            for (auto [y, g] : load_gini_series(o.svg_empirical))
                emp.push_back({static_cast<double>(y), g});
            chart.add_series("empirical", emp);
        }
        csv::write_file((fs::path(o.out) / "fig17.svg").string(), chart.render());
    }
    return 0;
}

struct GiniOpts {
    std::string pid, economy, out = ".";
    bool all_population = false, lorenz = false;
    double tail_k = 0, correction = kDefaultBinMeanCorrection;
    std::string convention = "paper";
};

int run_gini(const GiniOpts& o) {
    auto tables = load_pid_tables(resolve(o.pid, "pid_fine.csv", "pid"));
    EconomySeries economy;
    bool have_economy = false;
    if (o.all_population || !o.economy.empty()) {
        economy = load_economy(resolve(o.economy, "economy.csv", "economy"));
        have_economy = true;
    }
    KConvention conv = parse_convention(o.convention);

    std::string out_table = "year,population_base,method,gini\n";
    fs::create_directories(o.out);
    for (const auto& pid : tables) {
        std::optional<ParetoTail> tail;
        if (o.tail_k > 0) {
            if (!(o.tail_k > 1)) throw InvalidData("k must exceed 1");
            const Bin& last = pid.bins.back();
            tail = ParetoTail{last.open() ? last.lower : pid.bins.front().lower, o.tail_k, conv};
        }
        auto g = gini_from_pid(pid, o.correction, tail);
        out_table += std::to_string(g.year) + ',' + to_string(g.population_base) + ',' +
                     to_string(g.method) + ',' + csv::fixed6(g.value) + '\n';
        if (o.lorenz) {
            auto curve = lorenz_from_bins(pid, bin_means(pid, o.correction), tail);
            std::string lc = "x,y\n";
            for (const auto& p : curve.points)
                lc += csv::fixed6(p.x) + ',' + csv::fixed6(p.y) + '\n';
            csv::write_file(
                (fs::path(o.out) / ("lorenz_" + std::to_string(pid.year) + ".csv")).string(),
                lc);
        }
        if (o.all_population) {
            if (!have_economy) throw InvalidData("--all-population needs --economy");
            auto aug = with_zero_income_bin(pid, economy.at(pid.year).pop_15plus);
            auto ga = gini_from_pid(aug, o.correction, tail);
            out_table += std::to_string(ga.year) + ',' + to_string(ga.population_base) + ',' +
                         to_string(ga.method) + ',' + csv::fixed6(ga.value) + '\n';
        }
    }
    csv::write_file((fs::path(o.out) / "gini_empirical.csv").string(), out_table);
    return 0;
}

struct FitOpts {
    std::string pid, out = ".";
    double min_income = 100000;
    std::string convention = "paper";
    double correction = kDefaultBinMeanCorrection;
};

int run_fit_pareto(const FitOpts& o) {
    auto tables = load_pid_tables(resolve(o.pid, "pid_fine.csv", "pid"));
    KConvention conv = parse_convention(o.convention);
    std::string out_table = "year,method,threshold,slope,k\n";
    for (const auto& pid : tables) {
        // open-end estimator at every bin edge >= min whose upper zone is fully priced
        for (std::size_t i = 0; i < pid.bins.size(); ++i) {
            double edge = pid.bins[i].lower;
            if (edge < o.min_income) continue;
            double cnt = 0, inc = 0;
            bool priced = true;
            for (std::size_t j = i; j < pid.bins.size(); ++j) {
                if (!pid.bins[j].mean_income) { priced = false; break; }
                cnt += pid.bins[j].count;
                inc += pid.bins[j].count * *pid.bins[j].mean_income;
            }
            if (!priced || cnt <= 0) continue;
            double k = estimate_k_open_end(edge, inc / cnt, conv);
            out_table += std::to_string(pid.year) + ",open_end," + csv::fixed6(edge) + ",," +
                         csv::fixed6(k) + '\n';
        }
        auto density = normalize_density(pid, pid.total_count(), bin_means(pid, o.correction));
        try {
            auto fit = estimate_k_regression(density, o.min_income, conv);
            out_table += std::to_string(pid.year) + ",regression," + csv::fixed6(o.min_income) +
                         ',' + csv::fixed6(fit.slope) + ',' + csv::fixed6(fit.k) + '\n';
        } catch (const InsufficientTailBins&) {
            // table does not resolve the zone; skip the regression row
        }
    }
    fs::create_directories(o.out);
    csv::write_file((fs::path(o.out) / "k_estimates.csv").string(), out_table);
    return 0;
}

struct CollapseOpts {
    std::string pid, economy, out = ".";
    bool no_rescale = false;
    double correction = kDefaultBinMeanCorrection;
};

int run_collapse(const CollapseOpts& o) {
    auto tables = load_pid_tables(resolve(o.pid, "pid_crude.csv", "pid"));
    EconomySeries economy;
    if (!o.no_rescale)
        economy = load_economy(resolve(o.economy, "economy.csv", "economy"));

    std::vector<DensityTable> densities;
    int base_year = tables.empty() ? 0 : tables.front().year;
    for (const auto& pid : tables) {
        BinnedPid p = pid;
        if (!o.no_rescale) {
            double f = economy.at(pid.year).nominal_gpi_pc_with_income /
                       economy.at(base_year).nominal_gpi_pc_with_income;
            p = rescale_income_axis(pid, f);
        }
        densities.push_back(normalize_density(p, p.total_count(), bin_means(p, o.correction)));
    }
    std::string out_table = "year_a,year_b,distance\n";
    for (std::size_t a = 0; a < densities.size(); ++a)
        for (std::size_t b = a + 1; b < densities.size(); ++b)
            out_table += std::to_string(densities[a].year) + ',' +
                         std::to_string(densities[b].year) + ',' +
                         csv::fixed6(collapse_distance(densities[a], densities[b])) + '\n';
    fs::create_directories(o.out);
    csv::write_file((fs::path(o.out) / "collapse.csv").string(), out_table);
    return 0;
}

struct CompareOpts {
    std::string ours, reference, out = ".";
};

int run_compare(const CompareOpts& o) {
    auto ours = load_gini_series(o.ours);
    auto ref = load_gini_series(o.reference);
    auto cmp = compare_series(ours, ref);
    std::string out_table = "year,ours,reference,diff\n";
    for (const auto& r : cmp.rows)
        out_table += std::to_string(r.year) + ',' + csv::fixed6(r.ours) + ',' +
                     csv::fixed6(r.reference) + ',' + csv::fixed6(r.diff) + '\n';
    fs::create_directories(o.out);
    csv::write_file((fs::path(o.out) / "comparison.csv").string(), out_table);
    std::cout << "largest_reference_jump_year=" << cmp.jump_year
              << " size=" << csv::fixed6(cmp.jump_size) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Personal income distribution model and Gini toolkit"};
    app.require_subcommand(1);

    SimulateOpts so;
    auto* sim = app.add_subcommand("simulate", "predict the Gini series from GDP and ages");
    sim->add_option("--economy", so.economy);
    sim->add_option("--ages", so.ages);
    sim->add_option("--from", so.from);
    sim->add_option("--to", so.to);
    sim->add_option("--k", so.k);
    sim->add_option("--alpha", so.alpha);
    sim->add_option("--boost", so.boost);
    sim->add_option("--correction", so.correction);
    sim->add_option("--jobs", so.jobs);
    sim->add_option("--out", so.out);
    sim->add_flag("--svg", so.svg);
    sim->add_option("--empirical", so.svg_empirical, "year,gini series drawn beside the prediction");
    sim->add_option("--sweep-k", so.sweep_k, "comma-separated k values -> sensitivity.csv");

    GiniOpts go;
    auto* gin = app.add_subcommand("gini", "estimate Gini from binned PID tables");
    gin->add_option("--pid", go.pid);
    gin->add_option("--economy", go.economy);
    gin->add_option("--tail-k", go.tail_k);
    gin->add_option("--correction", go.correction);
    gin->add_option("--convention", go.convention);
    gin->add_flag("--all-population", go.all_population);
    gin->add_flag("--lorenz", go.lorenz);
    gin->add_option("--out", go.out);

    FitOpts fo;
    auto* fit = app.add_subcommand("fit-pareto", "estimate the Pareto index");
    fit->add_option("--pid", fo.pid);
    fit->add_option("--min", fo.min_income);
    fit->add_option("--convention", fo.convention);
    fit->add_option("--correction", fo.correction);
    fit->add_option("--out", fo.out);

    CollapseOpts co;
    auto* col = app.add_subcommand("collapse", "GPI-rescaled density distances");
    col->add_option("--pid", co.pid);
    col->add_option("--economy", co.economy);
    col->add_flag("--no-rescale", co.no_rescale);
    col->add_option("--correction", co.correction);
    col->add_option("--out", co.out);

    CompareOpts po;
    auto* cmp = app.add_subcommand("compare", "diff two year,gini series");
    cmp->add_option("--ours", po.ours)->required();
    cmp->add_option("--reference", po.reference)->required();
    cmp->add_option("--out", po.out);

    CLI11_PARSE(app, argc, argv);
    try {
        if (sim->parsed()) return run_simulate(so);
        if (gin->parsed()) return run_gini(go);
        if (fit->parsed()) return run_fit_pareto(fo);
        if (col->parsed()) return run_collapse(co);
        if (cmp->parsed()) return run_compare(po);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
