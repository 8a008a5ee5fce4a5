#include "tdce/taps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tdce {

ChannelSpec ChannelSpec::ssmf(int spans) {
    ChannelSpec s;
    s.span_count = spans;
    return s;
}

void ChannelSpec::validate() const {
    if (dispersion_ps_nm_km == 0.0 || !std::isfinite(dispersion_ps_nm_km))
        throw std::invalid_argument("dispersion must be finite and nonzero");
    if (!(wavelength_nm > 0.0)) throw std::invalid_argument("wavelength must be positive");
    if (!(baud_rate_hz > 0.0)) throw std::invalid_argument("baud rate must be positive");
    if (samples_per_symbol < 1) throw std::invalid_argument("samples per symbol must be >= 1");
    if (!(span_length_km >= 0.0)) throw std::invalid_argument("span length must be >= 0");
    if (span_count < 1) throw std::invalid_argument("span count must be >= 1");
    if (!(attenuation_db_km >= 0.0)) throw std::invalid_argument("attenuation must be >= 0");
}

namespace {

// c T^2 / (D lambda^2 z), the scale shared by the tap count and the taps.
double dispersion_ratio(const ChannelSpec& spec) {
    const double t = spec.sampling_period_s();
    const double lam = spec.wavelength_m();
    return kSpeedOfLight * t * t / (spec.dispersion_si() * lam * lam * spec.total_length_m());
}

}  // namespace

int max_taps(const ChannelSpec& spec) {
    spec.validate();
    const double t = spec.sampling_period_s();
    const double lam = spec.wavelength_m();
    const double arg =
        std::abs(spec.dispersion_si()) * lam * lam * spec.total_length_m() / (2.0 * kSpeedOfLight * t * t);
    return 2 * static_cast<int>(std::floor(arg)) + 1;
}

TapSet generate_taps(const ChannelSpec& spec, int m) {
    const int n = max_taps(spec);
    if (m < 1 || m % 2 == 0)
        throw std::invalid_argument("filter length must be a positive odd integer, got " + std::to_string(m));
    if (m > n)
        throw std::invalid_argument("filter length " + std::to_string(m) + " exceeds maximum " + std::to_string(n));

    const double ratio = dispersion_ratio(spec);
    const cplx scale = std::sqrt(cplx(0.0, ratio));
    const double chirp = kPi * ratio;
    const int half = m / 2;

    TapSet out;
    out.taps.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double idx = static_cast<double>(k - half);
        const double msq = idx * idx;
        out.taps[static_cast<std::size_t>(k)] = scale * std::polar(1.0, -chirp * msq);
    }
    return out;
}

double wrapped_phase(cplx z) {
    double p = std::atan2(z.imag(), z.real());
    if (p < 0.0) p += 2.0 * kPi;
    if (p >= 2.0 * kPi) p = 0.0;
    return p;
}

int phase_bin(double phase, int bin_count) {
    const double width = 2.0 * kPi / bin_count;
    int b = static_cast<int>(std::floor(phase / width));
    b = std::clamp(b, 0, bin_count - 1);
    // Correct floor() near edges so the bin matches [b*w, (b+1)*w) exactly.
    if (b > 0 && phase < b * width) --b;
    if (b + 1 < bin_count && phase >= (b + 1) * width) ++b;
    return b;
}

std::vector<int> angle_histogram(const TapSet& taps, int bin_count) {
    if (bin_count < 1) throw std::invalid_argument("bin_count must be >= 1");
    std::vector<int> counts(static_cast<std::size_t>(bin_count), 0);
    for (const cplx& g : taps.taps) ++counts[static_cast<std::size_t>(phase_bin(wrapped_phase(g), bin_count))];
    return counts;
}

double uniformity_rho(const TapSet& taps, int bin_count) {
    if (taps.size() == 0) throw std::invalid_argument("uniformity of an empty tap set is undefined");
    const auto counts = angle_histogram(taps, bin_count);
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    const double mean = static_cast<double>(taps.size()) / bin_count;
    return static_cast<double>(*hi - *lo) / mean;
}

}  // namespace tdce
