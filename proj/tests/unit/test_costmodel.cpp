#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tdce/costmodel.hpp"
#include "tdce/equalizer.hpp"

using namespace tdce;

namespace {

TdceHwConfig cfg(std::size_t m, std::size_t nc, std::size_t lanes, double alpha, std::size_t lp = 0) {
    TdceHwConfig c;
    c.m = m;
    c.n_c = nc;
    c.lanes = lanes;
    c.lp = lp;
    c.alpha = alpha;
    return c;
}

}  // namespace

TEST_CASE("worked hardware example with 10 clusters") {
    const TdceCost c = tdce_cost(cfg(97, 10, 20, 1.03));
    CHECK(c.cycles_per_block == 110);
    CHECK(c.complex_mults_per_block == 200);
    CHECK(c.required_lp == 2);
    CHECK(c.real_multipliers == 4);
    CHECK(c.presum_memory_positions == 20);
    CHECK(c.real_mults_per_sample == 40);
    CHECK(c.feasible);
}

TEST_CASE("worked hardware example with 8 clusters") {
    const TdceCost c = tdce_cost(cfg(97, 8, 18, 1.03));
    CHECK(c.cycles_per_block == 108);
    CHECK(c.complex_mults_per_block == 144);
    CHECK(c.required_lp == 2);
    CHECK(c.real_multipliers == 4);
}

TEST_CASE("configured multipliers below the minimum are infeasible") {
    const TdceCost c = tdce_cost(cfg(97, 10, 20, 1.03, 1));
    CHECK_FALSE(c.feasible);
    CHECK(c.required_lp == 2);
    CHECK(tdce_cost(cfg(97, 10, 20, 1.03, 4)).feasible);
}

TEST_CASE("required multipliers follow the divisor rule") {
    // Oracle: smallest divisor d of L with L*N_C <= d * cycles.
    for (std::size_t m = 5; m < 200; m += 13)
        for (std::size_t nc = 1; nc <= std::min<std::size_t>(m, 30); nc += 3)
            for (std::size_t l = 1; l <= 40; ++l)
                for (double alpha : {1.0, 1.03, 1.27, 2.0}) {
                    const TdceCost c = tdce_cost(cfg(m, nc, l, alpha));
                    const auto cycles = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(m + nc) + 0.5));
                    std::size_t d = 1;
                    while (!(l % d == 0 && l * nc <= d * cycles)) ++d;
                    CHECK(c.required_lp == d);
                    CHECK(c.real_multipliers == 2 * d);
                    CHECK(c.presum_memory_positions == 2 * nc);
                    CHECK(c.real_mults_per_sample == 4 * nc);
                }
}

TEST_CASE("cycle rounding is half up") {
    CHECK(tdce_cost(cfg(8, 1, 1, 1.5)).cycles_per_block == 14);  // 13.5
    CHECK(tdce_cost(cfg(9, 1, 1, 1.0)).cycles_per_block == 10);
    CHECK(tdce_cost(cfg(8, 1, 1, 1.25)).cycles_per_block == 11);  // 11.25
}

TEST_CASE("throughput is L / (alpha M) and independent of lp") {
    const TdceCost a = tdce_cost(cfg(97, 10, 20, 1.25, 2));
    const TdceCost b = tdce_cost(cfg(97, 10, 20, 1.25, 10));
    CHECK(a.samples_per_cycle == doctest::Approx(20.0 / (1.25 * 97)));
    CHECK(a.samples_per_cycle == b.samples_per_cycle);
    CHECK(a.samples_per_second == doctest::Approx(20.0 / (1.25 * 97) * 250e6));
    CHECK(a.throughput_mbps == doctest::Approx(20.0 / (1.25 * 97) * 250e6 * 2 / 1e6));
}

TEST_CASE("configuration invariants") {
    CHECK_THROWS_AS(tdce_cost(cfg(97, 0, 20, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(tdce_cost(cfg(97, 10, 20, 0.9)), std::invalid_argument);
    CHECK_THROWS_AS(tdce_cost(cfg(97, 10, 20, 1.0, 3)), std::invalid_argument);
    CHECK_THROWS_AS(tdce_cost(cfg(97, 98, 20, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(tdce_cost(cfg(97, 10, 0, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(clustered_complexity(0), std::invalid_argument);
}

TEST_CASE("clustered complexity for the reference designs") {
    const std::vector<std::size_t> knn = {36, 40, 40, 48}, gd = {24, 32, 32, 48};
    const auto& refs = reference_designs();
    REQUIRE(refs.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(clustered_complexity(refs[i].nc_knn) == knn[i]);
        CHECK(clustered_complexity(refs[i].nc_gd) == gd[i]);
    }
}

TEST_CASE("clustered complexity agrees with the engine's multiplication counter") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 1 + rng() % 40, nc = 1 + rng() % m, l = 1 + rng() % 12;
        ClusteredFilter cf;
        cf.centroids = oracle::random_cvec(nc, rng);
        for (std::size_t k = 0; k < m; ++k) cf.routing.push_back(static_cast<std::uint32_t>(k % nc));
        ConvolveStats st;
        clustered_convolve(oracle::random_cvec(m + 50, rng), cf, l, &st);
        CHECK(st.real_mults_per_sample() == static_cast<double>(clustered_complexity(nc)));
    }
}

TEST_CASE("FDE throughput") {
    FdeHwConfig f;
    f.n_fft = 256;
    f.m = 29;
    const FdeCost unit = fde_cost(f);
    CHECK(unit.samples_per_cycle == doctest::Approx(228.0 / 256.0));
    CHECK(unit.c_fft == doctest::Approx(fde_complexity(256, 29, Radix::radix4)));
    f.n_fft = 1024;
    f.m = 103;
    f.delta = 2.0;
    const double th2 = fde_cost(f).throughput_mbps;
    f.delta = 4.0;
    CHECK(fde_cost(f).throughput_mbps == doctest::Approx(th2 / 2.0));
    f.delta = default_fde_delta();
    CHECK(fde_cost(f).throughput_mbps == doctest::Approx(79.5));
    f.delta = 0.5;
    CHECK_THROWS_AS(fde_cost(f), std::invalid_argument);
    f.delta = 1.0;
    f.m = 1024;
    CHECK_THROWS_AS(fde_cost(f), std::invalid_argument);
}

TEST_CASE("calibration constants") {
    // 20 lanes * 250 MHz * 2 bits / (97 * 81.3 Mb/s)
    CHECK(default_alpha() == doctest::Approx(20.0 * 250e6 * 2.0 / (97.0 * 81.3e6)));
    CHECK(default_alpha() == doctest::Approx(1.268054).epsilon(1e-6));
    CHECK(calibrate_fde_delta(1024, 103, 500.0, 79.5) == doctest::Approx(922.0 * 500e6 / (500.0 * 79.5e6)));
    CHECK_THROWS_AS(calibrate_alpha(0, 20, 81.3), std::invalid_argument);
    CHECK_THROWS_AS(reference_design(3), std::invalid_argument);
}

TEST_CASE("matching a target throughput") {
    TdceHwConfig base = cfg(97, 10, 1, default_alpha(), 2);
    const TdceHwConfig got = match_throughput(base, 79.5);
    CHECK(got.lanes == 20);
    CHECK(std::abs(tdce_cost(got).throughput_mbps / 79.5 - 1.0) < 0.07);

    base.lp = 0;
    CHECK(match_throughput(base, 1e-6).lanes == 1);
    const std::size_t l1 = match_throughput(base, 40.0).lanes;
    const std::size_t l2 = match_throughput(base, 80.0).lanes;
    CHECK(l2 >= 2 * l1 - 1);
    CHECK(l2 <= 2 * l1 + 1);

    CHECK_THROWS_AS(match_throughput(base, 1e9), InfeasibleError);
    CHECK_THROWS_AS(match_throughput(base, -1.0), std::invalid_argument);
    // Steps of 50 lanes cannot land within 1% of this target.
    TdceHwConfig coarse = cfg(97, 10, 1, 1.0, 50);
    CHECK_THROWS_AS(match_throughput(coarse, 390.0, 0.01), InfeasibleError);
}
