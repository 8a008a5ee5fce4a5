#include <doctest.h>

#include <cmath>
#include <random>

#include "tdce/taps.hpp"

using namespace tdce;

namespace {

// Independent long-double evaluation of the tap formula.
cplx oracle_tap(const ChannelSpec& s, int m_index) {
    const long double c = 299792458.0L;
    const long double t = 1.0L / (static_cast<long double>(s.baud_rate_hz) * s.samples_per_symbol);
    const long double d = static_cast<long double>(s.dispersion_ps_nm_km) * 1e-6L;
    const long double lam = static_cast<long double>(s.wavelength_nm) * 1e-9L;
    const long double z = static_cast<long double>(s.span_length_km) * 1e3L * s.span_count;
    const long double r = c * t * t / (d * lam * lam * z);
    const std::complex<long double> amp = std::sqrt(std::complex<long double>(0.0L, r));
    const long double ph = -3.14159265358979323846264338327950288L * r * m_index * m_index;
    const auto v = amp * std::complex<long double>(std::cos(ph), std::sin(ph));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

TapSet synthetic(const std::vector<double>& phases) {
    TapSet t;
    for (double p : phases) t.taps.push_back(std::polar(1.0, p));
    return t;
}

}  // namespace

TEST_CASE("max_taps matches the reference tap counts") {
    CHECK(max_taps(ChannelSpec::ssmf(1)) == 45);
    CHECK(max_taps(ChannelSpec::ssmf(2)) == 89);
    CHECK(max_taps(ChannelSpec::ssmf(4)) == 177);
    CHECK(max_taps(ChannelSpec::ssmf(8)) == 353);
}

TEST_CASE("max_taps of a 1 m link is a single tap") {
    ChannelSpec s = ChannelSpec::ssmf(1);
    s.span_length_km = 1e-3;
    CHECK(max_taps(s) == 1);
}

TEST_CASE("max_taps is odd and nondecreasing in length and dispersion") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> km(0.1, 5000.0), disp(0.5, 30.0);
    for (int i = 0; i < 500; ++i) {
        ChannelSpec s = ChannelSpec::ssmf(1);
        s.span_length_km = km(rng);
        s.dispersion_ps_nm_km = disp(rng) * (i % 2 ? 1.0 : -1.0);
        const int n = max_taps(s);
        CHECK(n % 2 == 1);
        ChannelSpec longer = s;
        longer.span_length_km *= 1.01;
        CHECK(max_taps(longer) >= n);
        ChannelSpec stronger = s;
        stronger.dispersion_ps_nm_km *= 1.01;
        CHECK(max_taps(stronger) >= n);
    }
}

TEST_CASE("spec validation") {
    ChannelSpec s;
    s.dispersion_ps_nm_km = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = ChannelSpec{};
    s.samples_per_symbol = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = ChannelSpec{};
    s.span_count = 0;
    CHECK_THROWS_AS(max_taps(s), std::invalid_argument);
    s = ChannelSpec{};
    s.baud_rate_hz = -1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    CHECK(ChannelSpec{}.sampling_period_s() == 1.0 / (32e9 * 2));
}

TEST_CASE("generate_taps with M = 1 is the bare amplitude") {
    const ChannelSpec s = ChannelSpec::ssmf(1);
    const TapSet t = generate_taps(s, 1);
    REQUIRE(t.size() == 1);
    CHECK(t.center_index() == 0);
    CHECK(std::abs(t.taps[0] - oracle_tap(s, 0)) < 1e-15);
}

TEST_CASE("generate_taps matches the long-double oracle") {
    for (int spans : {1, 2, 4, 8}) {
        const ChannelSpec s = ChannelSpec::ssmf(spans);
        const int n = max_taps(s);
        const TapSet t = generate_taps(s, n);
        REQUIRE(static_cast<int>(t.size()) == n);
        for (int k = 0; k < n; ++k)
            CHECK(std::abs(t.taps[k] - oracle_tap(s, k - n / 2)) < 1e-12 * std::abs(t.taps[k]) * n);
    }
}

TEST_CASE("taps lie on one circle and are even-symmetric") {
    for (int spans : {1, 3, 8, 40}) {
        const ChannelSpec s = ChannelSpec::ssmf(spans);
        const TapSet t = generate_taps(s, max_taps(s));
        const double r = std::abs(t.taps[0]);
        const std::size_t c = t.center_index();
        for (std::size_t k = 0; k < t.size(); ++k) CHECK(std::abs(std::abs(t.taps[k]) - r) <= 1e-9 * r);
        for (std::size_t i = 0; i <= c; ++i) CHECK(t.taps[c + i] == t.taps[c - i]);
    }
}

TEST_CASE("truncation keeps the central taps") {
    const ChannelSpec s = ChannelSpec::ssmf(1);
    const TapSet full = generate_taps(s, 45);
    const TapSet part = generate_taps(s, 27);
    for (std::size_t k = 0; k < part.size(); ++k) CHECK(part.taps[k] == full.taps[k + 9]);
}

TEST_CASE("generate_taps rejects even or oversized filters") {
    const ChannelSpec s = ChannelSpec::ssmf(1);
    CHECK_THROWS_AS(generate_taps(s, 44), std::invalid_argument);
    CHECK_THROWS_AS(generate_taps(s, 47), std::invalid_argument);
    CHECK_THROWS_AS(generate_taps(s, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_taps(s, -3), std::invalid_argument);
}

TEST_CASE("angle_histogram of a single tap") {
    const TapSet t = generate_taps(ChannelSpec::ssmf(1), 1);
    const auto h = angle_histogram(t, 30);
    int ones = 0, sum = 0;
    for (int c : h) {
        sum += c;
        ones += c == 1;
    }
    CHECK(sum == 1);
    CHECK(ones == 1);
}

TEST_CASE("angle_histogram agrees with a brute-force phase scan") {
    const TapSet t = generate_taps(ChannelSpec::ssmf(1), 27);
    const auto h = angle_histogram(t, 30);
    std::vector<int> scan(30, 0);
    for (const auto& g : t.taps) {
        double ph = std::atan2(g.imag(), g.real());
        if (ph < 0) ph += 2.0 * kPi;
        for (int b = 0; b < 30; ++b) {
            if (ph >= b * 2.0 * kPi / 30 && ph < (b + 1) * 2.0 * kPi / 30) {
                ++scan[b];
                break;
            }
        }
    }
    CHECK(h == scan);
    int sum = 0;
    for (int c : h) sum += c;
    CHECK(sum == 27);
}

TEST_CASE("histogram counts always sum to M") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ph(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        TapSet t;
        const int m = 1 + trial % 50;
        for (int k = 0; k < m; ++k) t.taps.push_back(std::polar(0.5, ph(rng)));
        for (int bins : {1, 7, 30, 360}) {
            int sum = 0;
            for (int c : angle_histogram(t, bins)) sum += c;
            CHECK(sum == m);
        }
    }
}

TEST_CASE("phase binning edges go to the lower bin of the half-open interval") {
    CHECK(phase_bin(0.0, 30) == 0);
    CHECK(phase_bin(2.0 * kPi / 30.0, 30) == 1);
    CHECK(phase_bin(2.0 * kPi - 1e-15, 30) == 29);
    CHECK(wrapped_phase(cplx(-1.0, -1e-300)) < 2.0 * kPi);
    CHECK(wrapped_phase(cplx(1.0, -0.0)) == 0.0);
}

TEST_CASE("uniformity_rho closed forms") {
    CHECK(uniformity_rho(synthetic({0.3, 0.3, 0.3, 0.3, 0.3}), 30) == doctest::Approx(30.0));
    std::vector<double> one_per_bin;
    for (int b = 0; b < 30; ++b) one_per_bin.push_back((b + 0.5) * 2.0 * kPi / 30.0);
    CHECK(uniformity_rho(synthetic(one_per_bin), 30) == 0.0);
    CHECK_THROWS_AS(angle_histogram(synthetic({0.1}), 0), std::invalid_argument);
}

TEST_CASE("uniformity_rho falls with distance") {
    ChannelSpec near = ChannelSpec::ssmf(1);
    ChannelSpec far = ChannelSpec::ssmf(100);
    const double r_near = uniformity_rho(generate_taps(near, max_taps(near)), 30);
    const double r_far = uniformity_rho(generate_taps(far, max_taps(far)), 30);
    // Frozen values: 45 taps give bins ranging 0..6 (mu = 1.5); 4465 taps
    // at 8000 km.
    CHECK(r_near == doctest::Approx(4.0));
    CHECK(r_near > r_far);
    CHECK(r_far >= 0.0);
}
