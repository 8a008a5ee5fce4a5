#include "tdce/qam.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace tdce {

namespace qam16 {

namespace {

const double kScale = 1.0 / std::sqrt(10.0);

double level(std::uint8_t hi, std::uint8_t lo) {
    static constexpr double table[4] = {-3.0, -1.0, 3.0, 1.0};  // indexed by hi*2+lo
    return table[hi * 2 + lo];
}

void slice(double v, std::uint8_t& hi, std::uint8_t& lo) {
    hi = v > 0.0 ? 1 : 0;
    lo = std::abs(v) < 2.0 ? 1 : 0;
}

}  // namespace

cplx map(std::span<const std::uint8_t, 4> bits) {
    return cplx(level(bits[0], bits[1]), level(bits[2], bits[3])) * kScale;
}

std::array<std::uint8_t, 4> demap(cplx symbol) {
    std::array<std::uint8_t, 4> b{};
    slice(symbol.real() / kScale, b[0], b[1]);
    slice(symbol.imag() / kScale, b[2], b[3]);
    return b;
}

std::array<cplx, 16> constellation() {
    std::array<cplx, 16> pts{};
    for (std::uint8_t label = 0; label < 16; ++label) {
        const std::array<std::uint8_t, 4> b{static_cast<std::uint8_t>((label >> 3) & 1),
                                            static_cast<std::uint8_t>((label >> 2) & 1),
                                            static_cast<std::uint8_t>((label >> 1) & 1),
                                            static_cast<std::uint8_t>(label & 1)};
        pts[label] = map(b);
    }
    return pts;
}

}  // namespace qam16

SymbolStream generate_symbols(std::size_t count, std::uint64_t seed, bool dual_pol) {
    if (count == 0) throw std::invalid_argument("symbol count must be >= 1");
    std::mt19937_64 rng(seed);
    const std::size_t n_pol = dual_pol ? 2 : 1;
    SymbolStream s;
    s.bits.assign(n_pol, std::vector<std::uint8_t>(count * qam16::kBitsPerSymbol));
    s.symbols.assign(n_pol, CVec(count));
    for (std::size_t p = 0; p < n_pol; ++p) {
        auto& bits = s.bits[p];
        for (std::size_t i = 0; i < bits.size(); i += 64) {
            const std::uint64_t word = rng();
            for (std::size_t b = 0; b < 64 && i + b < bits.size(); ++b)
                bits[i + b] = static_cast<std::uint8_t>((word >> b) & 1U);
        }
        for (std::size_t k = 0; k < count; ++k)
            s.symbols[p][k] = qam16::map(std::span<const std::uint8_t, 4>(bits.data() + 4 * k, 4));
    }
    return s;
}

}  // namespace tdce
