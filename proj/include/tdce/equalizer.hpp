#pragma once

#include <optional>
#include <span>

#include "tdce/clustering.hpp"
#include "tdce/fixed_point.hpp"
#include "tdce/signal.hpp"
#include "tdce/taps.hpp"

namespace tdce {

/// Lanes x N_C pre-summed accumulators, row-major.
struct PreSumState {
    std::size_t lanes = 0;
    std::size_t n_clusters = 0;
    CVec values;

    cplx& at(std::size_t lane, std::size_t cluster) { return values[lane * n_clusters + cluster]; }
    const cplx& at(std::size_t lane, std::size_t cluster) const { return values[lane * n_clusters + cluster]; }
    std::span<const cplx> lane(std::size_t j) const { return {values.data() + j * n_clusters, n_clusters}; }
};

/// Multiplication accounting of one clustered_convolve call.
struct ConvolveStats {
    std::size_t outputs = 0;
    std::size_t complex_mults = 0;

    /// Four real multiplications per complex multiplication.
    double real_mults_per_sample() const {
        return outputs == 0 ? 0.0 : 4.0 * static_cast<double>(complex_mults) / static_cast<double>(outputs);
    }
};

/// Fully-overlapped FIR output, length len(x) - M + 1 per polarization.
SignalBlock direct_convolve(const SignalBlock& x, const TapSet& taps,
                            const std::optional<FixedFormat>& fmt = std::nullopt);

CVec direct_convolve(std::span<const cplx> x, std::span<const cplx> taps);

/// x_S[w] = sum of window[k] over k with routing[k] == w.
CVec presum_sequential(std::span<const cplx> window, const ClusteredFilter& cf);

/// Pre-sums L consecutive windows from M + L - 1 inputs at once.
PreSumState presum_parallel(std::span<const cplx> x, const ClusteredFilter& cf, std::size_t lanes);

/// Pre-sum then multiply by centroids, L outputs per block; the last block
/// shrinks to whatever outputs remain.
SignalBlock clustered_convolve(const SignalBlock& x, const ClusteredFilter& cf, std::size_t lanes,
                               const std::optional<FixedFormat>& fmt = std::nullopt,
                               ConvolveStats* stats = nullptr);

CVec clustered_convolve(std::span<const cplx> x, const ClusteredFilter& cf, std::size_t lanes,
                        ConvolveStats* stats = nullptr);

}  // namespace tdce
