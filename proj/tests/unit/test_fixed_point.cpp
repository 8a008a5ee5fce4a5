#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "tdce/fixed_point.hpp"

using namespace tdce;

TEST_CASE("format arithmetic") {
    const FixedFormat q511(16, 5);
    CHECK(q511.fraction_bits() == 11);
    CHECK(q511.resolution() == std::ldexp(1.0, -11));
    CHECK(q511.min_value() == -16.0);
    CHECK(q511.max_value() == 16.0 - std::ldexp(1.0, -11));
    const FixedFormat q115(16, 1);
    CHECK(q115.min_value() == -1.0);
    CHECK(q115.max_value() == 1.0 - std::ldexp(1.0, -15));
    CHECK(FixedFormat::parse("Q5.11") == q511);
    CHECK(FixedFormat::parse("Q1.15") == q115);
    CHECK(q511.to_string() == "Q5.11");
    CHECK_THROWS_AS(FixedFormat::parse("Q0.16"), std::invalid_argument);
    CHECK_THROWS_AS(FixedFormat::parse("5.11"), std::invalid_argument);
    CHECK_THROWS_AS(FixedFormat::parse("Q40.40"), std::invalid_argument);
    CHECK_THROWS_AS(FixedFormat(16, 17), std::invalid_argument);
    CHECK_THROWS_AS(FixedFormat(16, 0), std::invalid_argument);
}

TEST_CASE("quantize examples") {
    const FixedFormat f(16, 5);
    CHECK(quantize(0.5, f) == 0.5);
    // round(pi * 2^11) = 6434, computed by hand: pi * 2048 = 6433.98...
    CHECK(quantize(kPi, f) == 6434.0 / 2048.0);
    CHECK(quantize(100.0, f) == 15.99951171875);
    CHECK(quantize(-100.0, f) == -16.0);
    CHECK_THROWS_AS(quantize(std::numeric_limits<double>::quiet_NaN(), f), std::invalid_argument);
    CHECK_THROWS_AS(quantize(std::numeric_limits<double>::infinity(), f), std::invalid_argument);
}

TEST_CASE("ties round to even") {
    const FixedFormat f(16, 5);
    const double lsb = f.resolution();
    CHECK(quantize(0.5 * lsb, f) == 0.0);
    CHECK(quantize(1.5 * lsb, f) == 2.0 * lsb);
    CHECK(quantize(2.5 * lsb, f) == 2.0 * lsb);
    CHECK(quantize(-0.5 * lsb, f) == 0.0);
    CHECK(quantize(-1.5 * lsb, f) == -2.0 * lsb);
    CHECK(quantize(3.5 * lsb, f) == 4.0 * lsb);
}

TEST_CASE("quantizer properties") {
    std::mt19937_64 rng(1);
    for (const FixedFormat f : {FixedFormat(16, 5), FixedFormat(16, 1), FixedFormat(8, 3), FixedFormat(32, 2)}) {
        std::uniform_real_distribution<double> inside(f.min_value(), f.max_value());
        std::uniform_real_distribution<double> wide(4.0 * f.min_value(), 4.0 * f.max_value());
        for (int i = 0; i < 20000; ++i) {
            const double x = inside(rng);
            const double q = quantize(x, f);
            CHECK(std::abs(q - x) <= std::ldexp(1.0, -f.fraction_bits() - 1));
            CHECK(quantize(q, f) == q);
            const double a = wide(rng), b = wide(rng);
            if (a <= b) CHECK(quantize(a, f) <= quantize(b, f));
            CHECK(quantize(a, f) >= f.min_value());
            CHECK(quantize(a, f) <= f.max_value());
        }
    }
}

TEST_CASE("complex block quantization") {
    const FixedFormat f(16, 1);
    CHECK(quantize_complex_block(CVec{}, f).empty());
    const CVec exact = {{0.5, -0.25}, {f.max_value(), f.min_value()}};
    CHECK(quantize_complex_block(exact, f) == exact);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> d(0.0, 0.6);
    CVec v(1000);
    for (auto& x : v) x = {d(rng), d(rng)};
    const CVec q = quantize_complex_block(v, f);
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(q[i].real() == quantize(v[i].real(), f));
        CHECK(q[i].imag() == quantize(v[i].imag(), f));
    }
    CHECK(maybe_quantize(v, std::nullopt) == v);
    CHECK(maybe_quantize(v, f) == q);
}
