#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "tdce/common.hpp"

namespace tdce {

bool is_power_of_two(std::size_t n);

/// Precomputed twiddles and bit-reversal table for an iterative radix-2 FFT.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const { return n_; }

    /// In-place transform. Forward is unscaled; inverse divides by N.
    void forward(std::span<cplx> data) const { run(data, false); }
    void inverse(std::span<cplx> data) const { run(data, true); }

private:
    void run(std::span<cplx> data, bool inverse) const;

    std::size_t n_;
    CVec twiddles_;
    std::vector<std::size_t> bitrev_;
};

/// DFT of a power-of-two length vector; `inverse` applies the 1/N scale.
CVec fft(std::span<const cplx> x, bool inverse = false);

/// Length-agnostic DFT: radix-2 for powers of two, Bluestein otherwise.
/// Same scaling as fft().
class Dft {
public:
    explicit Dft(std::size_t n);

    std::size_t size() const { return n_; }
    void forward(std::span<cplx> data) const { run(data, false); }
    void inverse(std::span<cplx> data) const { run(data, true); }

private:
    void run(std::span<cplx> data, bool inverse) const;

    std::size_t n_;
    std::unique_ptr<FftPlan> plan_;
    // Bluestein state
    CVec chirp_;
    CVec kernel_fwd_;
    CVec kernel_inv_;
};

}  // namespace tdce
