#pragma once
// Independent reference implementations used as test oracles.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "tdce/common.hpp"

namespace oracle {

using tdce::cplx;
using tdce::CVec;

/// O(N^2) DFT, e^{-j 2 pi k n / N} forward kernel, 1/N on the inverse.
inline CVec naive_dft(const CVec& x, bool inverse = false) {
    const std::size_t n = x.size();
    CVec out(n);
    const long double sign = inverse ? 1.0L : -1.0L;
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<long double> acc{};
        for (std::size_t t = 0; t < n; ++t) {
            const long double ang = sign * 2.0L * 3.14159265358979323846264338327950288L *
                                    static_cast<long double>((k * t) % n) / static_cast<long double>(n);
            acc += std::complex<long double>(x[t].real(), x[t].imag()) *
                   std::complex<long double>(std::cos(ang), std::sin(ang));
        }
        if (inverse) acc /= static_cast<long double>(n);
        out[k] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    return out;
}

/// Valid-region FIR in window order, accumulated in long double.
inline CVec naive_fir(const CVec& x, const CVec& taps) {
    const std::size_t m = taps.size();
    CVec y(x.size() - m + 1);
    for (std::size_t n = 0; n < y.size(); ++n) {
        std::complex<long double> acc{};
        for (std::size_t k = 0; k < m; ++k)
            acc += std::complex<long double>(taps[k].real(), taps[k].imag()) *
                   std::complex<long double>(x[n + k].real(), x[n + k].imag());
        y[n] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    return y;
}

inline CVec random_cvec(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    CVec v(n);
    for (auto& x : v) x = {d(rng), d(rng)};
    return v;
}

inline double max_abs_diff(const CVec& a, const CVec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const CVec& a) {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace oracle
