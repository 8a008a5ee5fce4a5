#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tdce/common.hpp"

namespace tdce {

/// Physical and sampling parameters of a single-channel link.
struct ChannelSpec {
    double dispersion_ps_nm_km = 16.8;
    double wavelength_nm = 1550.0;
    double baud_rate_hz = 32e9;
    int samples_per_symbol = 2;
    double span_length_km = 80.0;
    int span_count = 1;
    double nonlinearity_w_km = 1.2;
    double attenuation_db_km = 0.21;
    double amp_noise_figure_db = 4.5;

    /// Standard single-mode fiber link with `spans` spans of 80 km.
    static ChannelSpec ssmf(int spans);

    double sampling_period_s() const { return 1.0 / (baud_rate_hz * samples_per_symbol); }
    double sample_rate_hz() const { return baud_rate_hz * samples_per_symbol; }
    double total_length_m() const { return span_length_km * 1e3 * span_count; }
    double span_length_m() const { return span_length_km * 1e3; }
    /// D converted to s/m^2.
    double dispersion_si() const { return dispersion_ps_nm_km * 1e-6; }
    double wavelength_m() const { return wavelength_nm * 1e-9; }

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

/// Truncated CD-compensation FIR filter.
///
/// Taps are stored in the order they meet the input window: output n is
/// sum_k taps[k] * x[n + k]. CD filters are even-symmetric, so for them this
/// coincides with ordinary convolution order.
struct TapSet {
    CVec taps;

    std::size_t size() const { return taps.size(); }
    std::size_t center_index() const { return taps.size() / 2; }
};

/// Maximum number of taps N = 2*floor(|D| lambda^2 z / (2 c T^2)) + 1.
int max_taps(const ChannelSpec& spec);

/// The M central taps of the CD-compensation impulse response.
TapSet generate_taps(const ChannelSpec& spec, int m);

/// Counts of tap phases per angular bin over [0, 2*pi).
std::vector<int> angle_histogram(const TapSet& taps, int bin_count = 30);

/// Bin index of a phase in [0, 2*pi) for the given number of bins.
int phase_bin(double phase, int bin_count);

/// Phase of z mapped to [0, 2*pi).
double wrapped_phase(cplx z);

/// (max bin - min bin) / (M / bin_count).
double uniformity_rho(const TapSet& taps, int bin_count = 30);

}  // namespace tdce
