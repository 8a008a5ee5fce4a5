#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "tdce/experiment.hpp"

using namespace tdce;
namespace fs = std::filesystem;

TEST_CASE("parallel_map keeps index order and propagates errors") {
    const auto v = parallel_map<int>(100, 8, [](std::size_t i) { return static_cast<int>(i * i); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
    CHECK(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
    CHECK_THROWS_AS(parallel_map<int>(10, 3,
                                      [](std::size_t i) -> int {
                                          if (i == 7) throw std::invalid_argument("boom");
                                          return 0;
                                      }),
                    std::invalid_argument);
}

TEST_CASE("worker count from the environment") {
    setenv("TDCE_WORKERS", "3", 1);
    CHECK(worker_count() == 3);
    setenv("TDCE_WORKERS", "zero", 1);
    CHECK_THROWS_AS(worker_count(), ConfigError);
    unsetenv("TDCE_WORKERS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("inversion counting") {
    CHECK(count_inversions({{1, 0.5}, {2, 0.4}, {3, 0.4}, {4, 0.1}}) == 0);
    CHECK(count_inversions({{1, 0.5}, {2, 0.6}, {3, 0.4}, {4, 0.41}}) == 2);
}

TEST_CASE("designs run through one entry point") {
    LinkRun r;
    r.spec = ChannelSpec::ssmf(1);
    r.symbol_count = 4096;
    const LinkData link = simulate_link(r);
    EqualizeParams p;
    p.m = 31;
    p.design = Design::direct;
    const double direct = evaluate_ber(run_equalizer(link.rx, r.spec, p), link.symbols, link.pulse).ber();
    p.design = Design::fde;
    const double fde = evaluate_ber(run_equalizer(link.rx, r.spec, p), link.symbols, link.pulse).ber();
    CHECK(fde == doctest::Approx(direct).epsilon(1e-12));
    p.design = Design::tdce;
    CHECK_THROWS_AS(run_equalizer(link.rx, r.spec, p), std::invalid_argument);
    const ClusteredFilter cf = kmeans_cluster(generate_taps(r.spec, 29), 9);
    CHECK_THROWS_AS(run_equalizer(link.rx, r.spec, p, &cf), std::invalid_argument);
    CHECK(parse_design("fde") == Design::fde);
    CHECK_THROWS_AS(parse_design("iir"), std::invalid_argument);
}

TEST_CASE("saved links replay identically") {
    const fs::path dir = fs::temp_directory_path() / "tdce_experiment_link";
    fs::remove_all(dir);
    LinkRun r;
    r.spec = ChannelSpec::ssmf(1);
    r.symbol_count = 1024;
    r.seed = 4;
    const LinkData link = simulate_link(r);
    save_link(dir, link);
    const LinkData back = load_link(dir / "rx.bin");
    CHECK(back.rx.pols == link.rx.pols);
    CHECK(back.tx.pols == link.tx.pols);
    CHECK(back.symbols.bits == link.symbols.bits);
    CHECK(back.pulse.taps == link.pulse.taps);
    CHECK(back.run.seed == 4);
    fs::remove_all(dir);
}

TEST_CASE("fine-tuning setup splits training and evaluation") {
    LinkRun r;
    r.spec = ChannelSpec::ssmf(1);
    r.symbol_count = 1 << 13;
    const LinkData link = simulate_link(r);
    const ClusteredFilter cf = kmeans_cluster(generate_taps(r.spec, 31), 9);
    const FinetuneSetup s = prepare_finetune(link, cf, 1 << 11);
    CHECK(s.train.rows() == 2 * ((std::size_t{1} << 14) - (std::size_t{1} << 12) - 30));
    const double ber = s.evaluator(cf.centroids);
    CHECK(ber < 0.01);
    CHECK_THROWS_AS(prepare_finetune(link, cf, 1 << 13), std::invalid_argument);
}

TEST_CASE("report tables agree with the cost model") {
    const std::string csv = complexity_report_csv(default_alpha(), default_fde_delta());
    CHECK(csv.find("\n4,177,97,103,10,8,1024,40,32,") != std::string::npos);
    const io::Json j = complexity_report_json(default_alpha(), default_fde_delta());
    REQUIRE(j["designs"].size() == 4);
    for (const auto& row : j["designs"]) {
        const ReferenceDesign& d = reference_design(row["spans"].get<int>());
        CHECK(row["complexity"]["cv_knn"] == clustered_complexity(d.nc_knn));
        CHECK(row["complexity"]["cv_gd"] == clustered_complexity(d.nc_gd));
        CHECK(row["complexity"]["c_fft_radix4"].get<double>() == fde_complexity(d.n_fft, d.m_fde, Radix::radix4));
    }
    CHECK(j["designs"][2]["tdce_knn"]["throughput_mbps"].get<double>() == doctest::Approx(81.3));
    CHECK(j["designs"][2]["fde"]["throughput_mbps"].get<double>() == doctest::Approx(79.5));
}
