#include <catch2/catch_amalgamated.hpp>

#include "incomesim/collapse.hpp"
#include "incomesim/lorenz.hpp"
#include "test_util.hpp"

using namespace incomesim;
using Catch::Approx;

namespace {

BinnedPid synthetic_pid(double scale) {
    BinnedPid pid;
    pid.year = 0;
    double lo = 0;
    double edges[] = {500, 1200, 2000, 3000, 4500, 7000, 11000, 18000};
    double prev_sf = 1.0;
    for (double e : edges) {
        double hi = e * scale;
        double sf = std::exp(-e / 4000.0);
        pid.bins.push_back({lo, hi, (prev_sf - sf) * 1000, {}});
        prev_sf = sf;
        lo = hi;
    }
    return pid;
}

DensityTable density_of(const BinnedPid& pid) {
    return normalize_density(pid, pid.total_count(), bin_means(pid));
}

} // namespace

TEST_CASE("collapse distance of a table with itself is zero") {
    auto d = density_of(synthetic_pid(1.0));
    CHECK(collapse_distance(d, d) == 0.0);
}

TEST_CASE("scale-related synthetic PIDs collapse exactly after rescaling") {
    auto a = synthetic_pid(1.0);
    auto b = rescale_income_axis(a, 1.0 / 3.7); // same shape, incomes x3.7
    for (auto& bin : b.bins) bin.count = bin.count; // counts unchanged

    double raw = collapse_distance(density_of(a), density_of(b));
    CHECK(raw > 0.1);

    auto b_rescaled = rescale_income_axis(b, 3.7);
    // densities of the rescaled table must be recomputed from its own widths
    double back = collapse_distance(density_of(a), density_of(b_rescaled));
    CHECK(back == Approx(0.0).margin(1e-12));
}

TEST_CASE("disjoint supports are an error") {
    auto a = density_of(synthetic_pid(1.0));
    auto b = density_of(rescale_income_axis(synthetic_pid(1.0), 1e-6));
    CHECK_THROWS_AS(collapse_distance(a, b), DisjointSupport);
}

TEST_CASE("bundled crude tables nearly collapse after GPI rescaling") {
    auto econ = load_economy(testutil::data_file("economy.csv"));
    auto crude = load_pid_tables(testutil::data_file("pid_crude.csv"));
    const BinnedPid *p1947 = nullptr, *p1987 = nullptr;
    for (const auto& p : crude) {
        if (p.year == 1947) p1947 = &p;
        if (p.year == 1987) p1987 = &p;
    }
    REQUIRE(p1947);
    REQUIRE(p1987);

    double raw = collapse_distance(density_of(*p1947), density_of(*p1987));
    double g = econ.at(1987).nominal_gpi_pc_with_income /
               econ.at(1947).nominal_gpi_pc_with_income;
    // densities change with the axis: recompute after rescaling 1987 to 1947 scale
    auto rescaled = rescale_income_axis(*p1987, g);
    double collapsed = collapse_distance(density_of(*p1947), density_of(rescaled));
    CHECK(collapsed * 5.0 <= raw);
}

TEST_CASE("compare_series") {
    std::map<int, double> ours{{1994, 0.51}, {1995, 0.515}, {1996, 0.52}, {1998, 0.52}};

    SECTION("identical series give zero differences") {
        auto c = compare_series(ours, ours);
        for (const auto& r : c.rows) CHECK(r.diff == 0.0);
    }
    SECTION("step in the reference is reported") {
        std::map<int, double> ref;
        for (int y = 1994; y <= 2005; ++y) ref[y] = y < 1998 ? 0.515 : 0.505;
        auto c = compare_series(ours, ref);
        CHECK(c.jump_year == 1998);
        CHECK(c.jump_size == Approx(0.01));
    }
    SECTION("no overlap is an error") {
        std::map<int, double> ref{{1950, 0.4}};
        CHECK_THROWS_AS(compare_series(ours, ref), NoOverlap);
    }
}
