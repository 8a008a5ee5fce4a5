#include "tdce/equalizer.hpp"

#include <stdexcept>

#include "tdce/presum.hpp"

namespace tdce {

namespace {

void check_input(const SignalBlock& x, std::size_t m) {
    x.validate();
    if (m == 0) throw std::invalid_argument("filter is empty");
    if (x.length() < m) throw std::invalid_argument("input shorter than filter length");
}

SignalBlock equalized_like(const SignalBlock& x, std::size_t m) {
    SignalBlock out;
    out.sample_rate_hz = x.sample_rate_hz;
    out.role = SignalRole::equalized;
    out.offset = x.offset + static_cast<std::int64_t>((m - 1) / 2);
    out.pols.resize(x.polarizations());
    return out;
}

}  // namespace

CVec direct_convolve(std::span<const cplx> x, std::span<const cplx> taps) {
    if (taps.empty()) throw std::invalid_argument("filter is empty");
    if (x.size() < taps.size()) throw std::invalid_argument("input shorter than filter length");
    CVec y(x.size() - taps.size() + 1);
    kernel::direct_convolve<cplx>(x, taps, y);
    return y;
}

SignalBlock direct_convolve(const SignalBlock& x, const TapSet& taps, const std::optional<FixedFormat>& fmt) {
    check_input(x, taps.size());
    const CVec g = maybe_quantize(taps.taps, fmt);
    SignalBlock out = equalized_like(x, g.size());
    for (std::size_t p = 0; p < x.polarizations(); ++p)
        out.pols[p] = direct_convolve(maybe_quantize(x.pols[p], fmt), g);
    return out;
}

CVec presum_sequential(std::span<const cplx> window, const ClusteredFilter& cf) {
    cf.validate();
    CVec xs(cf.n_clusters());
    kernel::presum_sequential<cplx>(window, cf.routing, xs);
    return xs;
}

PreSumState presum_parallel(std::span<const cplx> x, const ClusteredFilter& cf, std::size_t lanes) {
    cf.validate();
    PreSumState st{lanes, cf.n_clusters(), CVec(lanes * cf.n_clusters())};
    kernel::presum_parallel<cplx>(x, cf.routing, lanes, cf.n_clusters(), st.values);
    return st;
}

CVec clustered_convolve(std::span<const cplx> x, const ClusteredFilter& cf, std::size_t lanes,
                        ConvolveStats* stats) {
    cf.validate();
    if (lanes == 0) throw std::invalid_argument("lane count must be positive");
    if (x.size() < cf.source_filter_len()) throw std::invalid_argument("input shorter than filter length");
    CVec y(x.size() - cf.source_filter_len() + 1);
    const std::size_t mults = kernel::clustered_convolve<cplx>(x, cf.routing, cf.centroids, lanes, y);
    if (stats) {
        stats->outputs += y.size();
        stats->complex_mults += mults;
    }
    return y;
}

SignalBlock clustered_convolve(const SignalBlock& x, const ClusteredFilter& cf, std::size_t lanes,
                               const std::optional<FixedFormat>& fmt, ConvolveStats* stats) {
    cf.validate();
    check_input(x, cf.source_filter_len());
    ClusteredFilter q{maybe_quantize(cf.centroids, fmt), cf.routing};
    SignalBlock out = equalized_like(x, cf.source_filter_len());
    for (std::size_t p = 0; p < x.polarizations(); ++p)
        out.pols[p] = clustered_convolve(maybe_quantize(x.pols[p], fmt), q, lanes, stats);
    return out;
}

}  // namespace tdce
