#include <doctest.h>

#include "tdce/channel.hpp"
#include "tdce/metrics.hpp"

using namespace tdce;

namespace {

struct BackToBack {
    SymbolStream sym = generate_symbols(2000, 7, true);
    PulseFilter pulse = make_pulse(PulseShape::rrc, 2, 0.1, 16);
    SignalBlock tx = shape_and_upsample(sym.symbols, pulse, 64e9);
};

}  // namespace

TEST_CASE("clean waveform has no errors") {
    BackToBack b;
    const BerResult r = evaluate_ber(b.tx, b.sym, b.pulse);
    CHECK(r.bit_errors == 0);
    // Symbols whose matched filter would leave the block are skipped.
    CHECK(r.symbols == 2 * (2000 - 16 - 16));
    CHECK(r.bits == 4 * r.symbols);
    CHECK(r.ber() == 0.0);
}

TEST_CASE("a complex gain is removed before slicing") {
    BackToBack b;
    for (auto& p : b.tx.pols)
        for (auto& v : p) v *= std::polar(0.3, 1.1);
    CHECK(evaluate_ber(b.tx, b.sym, b.pulse).bit_errors == 0);
}

TEST_CASE("bit errors are counted exactly") {
    BackToBack b;
    SymbolStream wrong = b.sym;
    wrong.bits[0][4 * 100 + 2] ^= 1;
    wrong.bits[1][4 * 500] ^= 1;
    wrong.bits[1][4 * 500 + 3] ^= 1;
    CHECK(evaluate_ber(b.tx, wrong, b.pulse).bit_errors == 3);
    // Errors on a symbol outside the evaluated range are not counted.
    wrong = b.sym;
    wrong.bits[0][0] ^= 1;
    CHECK(evaluate_ber(b.tx, wrong, b.pulse).bit_errors == 0);
}

TEST_CASE("offset locates the block on the transmit timeline") {
    BackToBack b;
    SignalBlock part;
    part.sample_rate_hz = b.tx.sample_rate_hz;
    part.offset = 301;
    for (const auto& p : b.tx.pols) part.pols.emplace_back(p.begin() + 301, p.begin() + 2301);
    const BerResult r = evaluate_ber(part, b.sym, b.pulse);
    CHECK(r.bit_errors == 0);
    CHECK(r.symbols > 0);
    const BerResult g = evaluate_ber(part, b.sym, b.pulse, {10});
    CHECK(g.symbols == r.symbols - 2 * 2 * 10);
    part.offset = 300;  // misaligned by one sample
    CHECK(evaluate_ber(part, b.sym, b.pulse).ber() > 0.1);
}

TEST_CASE("reference mismatches are rejected") {
    BackToBack b;
    SymbolStream single = b.sym;
    single.symbols.pop_back();
    single.bits.pop_back();
    CHECK_THROWS_AS(evaluate_ber(b.tx, single, b.pulse), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_ber(b.tx.pols[0], 0, b.sym.symbols[0], std::span(b.sym.bits[0]).first(8), b.pulse),
                    std::invalid_argument);
}
