#pragma once

#include <optional>
#include <string>

#include "tdce/fft.hpp"
#include "tdce/fixed_point.hpp"
#include "tdce/signal.hpp"
#include "tdce/taps.hpp"

namespace tdce {

/// Radix of the FFT architecture assumed by the complexity model. The
/// numerical transform is always radix-2.
enum class Radix { radix2, radix4 };

std::string to_string(Radix r);
Radix parse_radix(const std::string& text);

struct FdeConfig {
    std::size_t fft_size = 256;
    TapSet filter;
    Radix radix = Radix::radix2;
    std::optional<FixedFormat> fmt;
};

/// Overlap-save block filter. The frequency response of the filter is
/// computed once at construction.
class OverlapSaveEqualizer {
public:
    explicit OverlapSaveEqualizer(FdeConfig cfg);

    /// Same output (length and alignment) as direct_convolve.
    SignalBlock equalize(const SignalBlock& x) const;

    /// Fully-overlapped filter output of one stream.
    CVec filter(std::span<const cplx> x) const;

    const FdeConfig& config() const { return cfg_; }
    /// Outputs retained per block: N_FFT - M + 1.
    std::size_t block_step() const { return cfg_.fft_size - cfg_.filter.size() + 1; }

private:
    FdeConfig cfg_;
    FftPlan plan_;
    CVec response_;
};

SignalBlock overlap_save_equalize(const SignalBlock& x, const FdeConfig& cfg);

/// Real multiplications per recovered sample:
/// N (8 beta log2 N + 4) / (N - M + 1), beta = 1/2 (radix-2) or 3/8 (radix-4).
double fde_complexity(std::size_t n_fft, std::size_t m, Radix radix);

/// True when n_fft is a valid transform size for the radix (power of 2 or 4).
bool valid_fft_size(std::size_t n_fft, Radix radix);

/// FFT size in [min_size, max_size] minimizing fde_complexity; ties go to the
/// smaller size.
std::size_t optimal_fft_size(std::size_t m, Radix radix, std::size_t min_size = 128, std::size_t max_size = 4096);

}  // namespace tdce
