#pragma once

#include <cstdint>
#include <vector>

#include "tdce/channel.hpp"
#include "tdce/qam.hpp"
#include "tdce/signal.hpp"

namespace tdce {

struct BerResult {
    std::size_t bit_errors = 0;
    std::size_t bits = 0;
    std::size_t symbols = 0;

    double ber() const { return bits == 0 ? 0.0 : static_cast<double>(bit_errors) / static_cast<double>(bits); }
};

struct BerOptions {
    /// Extra symbols dropped at each end beyond those lacking full
    /// matched-filter support.
    std::size_t guard_symbols = 0;
};

/// Matched-filters an equalized block at the symbol instants, removes a
/// single least-squares complex gain per polarization, demaps and counts bit
/// errors against the reference. The block offset locates its samples on the
/// transmitted timeline; symbols whose matched-filter window leaves the block
/// are skipped.
BerResult evaluate_ber(const SignalBlock& equalized, const SymbolStream& reference, const PulseFilter& pulse,
                       const BerOptions& opts = {});

/// Same for one stream: `samples[i]` sits at transmitted sample `offset + i`.
BerResult evaluate_ber(std::span<const cplx> samples, std::int64_t offset, std::span<const cplx> ref_symbols,
                       std::span<const std::uint8_t> ref_bits, const PulseFilter& pulse,
                       const BerOptions& opts = {});

}  // namespace tdce
