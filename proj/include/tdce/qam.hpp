#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tdce/common.hpp"

namespace tdce {

/// Gray-coded square 16-QAM with unit average power. Bits b0 b1 select the
/// in-phase level, b2 b3 the quadrature level, each via 00 01 11 10 ->
/// -3 -1 +1 +3 (scaled by 1/sqrt(10)).
namespace qam16 {

inline constexpr int kBitsPerSymbol = 4;

cplx map(std::span<const std::uint8_t, 4> bits);
std::array<std::uint8_t, 4> demap(cplx symbol);

/// All 16 points indexed by the 4-bit label b0b1b2b3 (b0 most significant).
std::array<cplx, 16> constellation();

}  // namespace qam16

struct SymbolStream {
    /// bits[p] holds 4 bits per symbol of polarization p.
    std::vector<std::vector<std::uint8_t>> bits;
    std::vector<CVec> symbols;
};

/// Uniform random bits mapped to 16-QAM; deterministic per seed.
SymbolStream generate_symbols(std::size_t count, std::uint64_t seed, bool dual_pol = true);

}  // namespace tdce
