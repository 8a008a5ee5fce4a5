#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdce/qam.hpp"
#include "tdce/signal.hpp"
#include "tdce/taps.hpp"

namespace tdce {

enum class PulseShape { rrc, rect };

std::string to_string(PulseShape p);
PulseShape parse_pulse_shape(const std::string& text);

/// Real pulse-shaping filter. Symbol k is centred on sample k*sps; tap i lands
/// on sample k*sps + i - center. Taps carry energy sps so a unit-power symbol
/// stream yields a unit-power waveform.
struct PulseFilter {
    std::vector<double> taps;
    std::size_t center = 0;
    int sps = 1;
};

/// Root-raised-cosine taps spanning +-span_symbols symbols.
std::vector<double> rrc_taps(int sps, double rolloff, int span_symbols);

PulseFilter make_pulse(PulseShape shape, int sps, double rolloff = 0.1, int span_symbols = 64);

/// Upsamples by pulse.sps and filters circularly (the block is treated as one
/// period, matching the periodic split-step propagation).
SignalBlock shape_and_upsample(const std::vector<CVec>& symbols, const PulseFilter& pulse, double sample_rate_hz);

struct LinkRun {
    ChannelSpec spec;
    double launch_power_dbm = 0.0;
    std::size_t symbol_count = 1U << 16;
    std::uint64_t seed = 1;
    bool nonlinear = false;
    bool noise = true;
    /// Split-step length in nonlinear mode; linear mode uses one step per span.
    double step_size_m = 100.0;
    PulseShape pulse = PulseShape::rrc;
    double rolloff = 0.1;
    int pulse_span_symbols = 64;
    /// RMS of each received polarization after the front-end gain.
    double frontend_rms = 0.25;

    void validate() const;
    /// Launch power per polarization in watts (total split over both).
    double power_per_pol_w() const;
};

/// Per-sample complex noise variance one EDFA adds to a polarization,
/// relative to the per-polarization launch power.
double ase_variance_per_span(const LinkRun& run);

/// Symmetric split-step propagation over all spans, each followed by an EDFA
/// restoring the span loss and adding ASE. Input and output are in units of
/// sqrt(launch power per polarization).
SignalBlock propagate(const SignalBlock& tx, const LinkRun& run);

/// Fixed receiver gain mapping unit per-polarization power to frontend_rms.
SignalBlock receiver_front_end(const SignalBlock& x, double gain);

struct LinkData {
    LinkRun run;
    SymbolStream symbols;
    PulseFilter pulse;
    /// Transmitted waveform scaled by the same front-end gain as rx.
    SignalBlock tx;
    SignalBlock rx;
};

LinkData simulate_link(const LinkRun& run);

}  // namespace tdce
