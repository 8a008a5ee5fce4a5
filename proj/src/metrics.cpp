#include "tdce/metrics.hpp"

#include <stdexcept>

namespace tdce {

BerResult evaluate_ber(std::span<const cplx> samples, std::int64_t offset, std::span<const cplx> ref_symbols,
                       std::span<const std::uint8_t> ref_bits, const PulseFilter& pulse, const BerOptions& opts) {
    if (ref_bits.size() != ref_symbols.size() * qam16::kBitsPerSymbol)
        throw std::invalid_argument("reference bits and symbols disagree");
    const auto sps = static_cast<std::int64_t>(pulse.sps);
    const auto len = static_cast<std::int64_t>(samples.size());
    const auto center = static_cast<std::int64_t>(pulse.center);
    const auto ntaps = static_cast<std::int64_t>(pulse.taps.size());
    const double norm = 1.0 / static_cast<double>(sps);

    std::vector<std::size_t> index;
    CVec mf;
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(ref_symbols.size()); ++k) {
        const std::int64_t first = k * sps - center - offset;
        if (first < 0 || first + ntaps > len) continue;
        cplx acc{};
        for (std::int64_t i = 0; i < ntaps; ++i) acc += samples[static_cast<std::size_t>(first + i)] * pulse.taps[static_cast<std::size_t>(i)];
        index.push_back(static_cast<std::size_t>(k));
        mf.push_back(acc * norm);
    }
    const std::size_t g = opts.guard_symbols;
    if (index.size() <= 2 * g) return {};

    cplx num{};
    double den = 0.0;
    for (std::size_t i = g; i + g < index.size(); ++i) {
        num += std::conj(mf[i]) * ref_symbols[index[i]];
        den += std::norm(mf[i]);
    }
    const cplx gain = den > 0.0 ? num / den : cplx(1.0, 0.0);

    BerResult r;
    for (std::size_t i = g; i + g < index.size(); ++i) {
        const auto bits = qam16::demap(mf[i] * gain);
        const std::size_t k = index[i];
        for (std::size_t b = 0; b < 4; ++b) r.bit_errors += bits[b] != ref_bits[4 * k + b] ? 1 : 0;
        r.bits += 4;
        ++r.symbols;
    }
    return r;
}

BerResult evaluate_ber(const SignalBlock& equalized, const SymbolStream& reference, const PulseFilter& pulse,
                       const BerOptions& opts) {
    equalized.validate();
    if (equalized.polarizations() > reference.symbols.size())
        throw std::invalid_argument("more polarizations than reference streams");
    BerResult total;
    for (std::size_t p = 0; p < equalized.polarizations(); ++p) {
        const auto r = evaluate_ber(equalized.pols[p], equalized.offset, reference.symbols[p], reference.bits[p],
                                    pulse, opts);
        total.bit_errors += r.bit_errors;
        total.bits += r.bits;
        total.symbols += r.symbols;
    }
    return total;
}

}  // namespace tdce
