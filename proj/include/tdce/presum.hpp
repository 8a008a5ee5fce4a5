#pragma once

// Pre-summation kernels, generic over the sample type so the same loops can be
// run on doubles, fixed-point grids, or exact rationals.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace tdce::kernel {

/// x_S[Q[i]] += window[i] for i = 0..M-1. `out` must hold N_C zeroed slots.
template <class T>
void presum_sequential(std::span<const T> window, std::span<const std::uint32_t> routing, std::span<T> out) {
    if (window.size() != routing.size()) throw std::invalid_argument("window length must equal routing length");
    for (auto& v : out) v = T{};
    for (std::size_t i = 0; i < routing.size(); ++i) {
        const std::uint32_t w = routing[i];
        out[w] = out[w] + window[i];
    }
}

/// Lane-parallel form: the routing entry is read once per tap and applied to
/// L consecutive inputs. `out` is row-major lanes x N_C.
template <class T>
void presum_parallel(std::span<const T> x, std::span<const std::uint32_t> routing, std::size_t lanes,
                     std::size_t n_clusters, std::span<T> out) {
    if (lanes == 0) throw std::invalid_argument("lane count must be positive");
    if (x.size() != routing.size() + lanes - 1)
        throw std::invalid_argument("parallel pre-summation needs exactly M + L - 1 inputs");
    if (out.size() != lanes * n_clusters) throw std::invalid_argument("pre-sum state has wrong dimensions");
    for (auto& v : out) v = T{};
    for (std::size_t i = 0; i < routing.size(); ++i) {
        const std::uint32_t w = routing[i];
        for (std::size_t j = 0; j < lanes; ++j) {
            T& acc = out[j * n_clusters + w];
            acc = acc + x[i + j];
        }
    }
}

/// sum_k presum[k] * centroids[k], accumulated in increasing k.
template <class T>
T clustered_dot(std::span<const T> presum, std::span<const T> centroids) {
    T acc{};
    for (std::size_t k = 0; k < centroids.size(); ++k) acc = acc + presum[k] * centroids[k];
    return acc;
}

/// Valid-region clustered convolution of a single stream, processed in
/// blocks of up to `lanes` outputs. Returns the number of complex
/// multiplications performed.
template <class T>
std::size_t clustered_convolve(std::span<const T> x, std::span<const std::uint32_t> routing,
                               std::span<const T> centroids, std::size_t lanes, std::span<T> y) {
    const std::size_t m = routing.size();
    const std::size_t nc = centroids.size();
    if (x.size() < m) throw std::invalid_argument("input shorter than filter");
    const std::size_t n_out = x.size() - m + 1;
    if (y.size() != n_out) throw std::invalid_argument("output span has wrong length");
    std::vector<T> state(lanes * nc);
    std::size_t mults = 0;
    for (std::size_t n0 = 0; n0 < n_out; n0 += lanes) {
        const std::size_t l = std::min(lanes, n_out - n0);
        std::span<T> st(state.data(), l * nc);
        presum_parallel<T>(x.subspan(n0, m + l - 1), routing, l, nc, st);
        for (std::size_t j = 0; j < l; ++j) {
            y[n0 + j] = clustered_dot<T>(std::span<const T>(st.subspan(j * nc, nc)), centroids);
            mults += nc;
        }
    }
    return mults;
}

/// Valid-region direct FIR: y[n] = sum_k taps[k] * x[n + k].
template <class T>
void direct_convolve(std::span<const T> x, std::span<const T> taps, std::span<T> y) {
    const std::size_t m = taps.size();
    if (x.size() < m) throw std::invalid_argument("input shorter than filter");
    if (y.size() != x.size() - m + 1) throw std::invalid_argument("output span has wrong length");
    for (std::size_t n = 0; n < y.size(); ++n) {
        T acc{};
        for (std::size_t k = 0; k < m; ++k) acc = acc + taps[k] * x[n + k];
        y[n] = acc;
    }
}

}  // namespace tdce::kernel
