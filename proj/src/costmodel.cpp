#include "tdce/costmodel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tdce {

std::size_t clustered_complexity(std::size_t n_clusters) {
    if (n_clusters == 0) throw std::invalid_argument("cluster count must be positive");
    return kComplexityRealMults * n_clusters;
}

void TdceHwConfig::validate() const {
    if (m == 0) throw std::invalid_argument("filter length must be positive");
    if (n_c == 0) throw std::invalid_argument("cluster count must be positive");
    if (n_c > m) throw std::invalid_argument("cluster count exceeds filter length");
    if (lanes == 0) throw std::invalid_argument("lane count must be positive");
    if (lp != 0 && lanes % lp != 0) throw std::invalid_argument("lane count must be a multiple of lp");
    if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be >= 1");
    if (!(clock_hz > 0.0)) throw std::invalid_argument("clock must be positive");
    if (!(bits_per_sample > 0.0)) throw std::invalid_argument("bits per sample must be positive");
}

TdceCost tdce_cost(const TdceHwConfig& cfg) {
    cfg.validate();
    TdceCost c;
    c.cycles_per_block = static_cast<std::size_t>(std::floor(cfg.alpha * static_cast<double>(cfg.m + cfg.n_c) + 0.5));
    c.samples_per_cycle = static_cast<double>(cfg.lanes) / (cfg.alpha * static_cast<double>(cfg.m));
    c.samples_per_second = c.samples_per_cycle * cfg.clock_hz;
    c.throughput_mbps = c.samples_per_second * cfg.bits_per_sample / 1e6;
    c.complex_mults_per_block = cfg.lanes * cfg.n_c;
    c.required_lp = cfg.lanes;
    for (std::size_t d = 1; d <= cfg.lanes; ++d) {
        if (cfg.lanes % d == 0 && c.complex_mults_per_block <= d * c.cycles_per_block) {
            c.required_lp = d;
            break;
        }
    }
    c.real_multipliers = kHardwareRealMults * c.required_lp;
    c.presum_memory_positions = 2 * cfg.n_c;
    c.real_mults_per_sample = clustered_complexity(cfg.n_c);
    c.feasible = cfg.lp == 0 || cfg.lp >= c.required_lp;
    return c;
}

void FdeHwConfig::validate() const {
    if (n_fft <= m) throw std::invalid_argument("FFT size must exceed the filter length");
    if (m == 0) throw std::invalid_argument("filter length must be positive");
    if (!(delta >= 1.0)) throw std::invalid_argument("delta must be >= 1");
    if (latency_cycles < 0.0) throw std::invalid_argument("latency must be non-negative");
    if (!(clock_hz > 0.0)) throw std::invalid_argument("clock must be positive");
    if (!(bits_per_sample > 0.0)) throw std::invalid_argument("bits per sample must be positive");
}

FdeCost fde_cost(const FdeHwConfig& cfg) {
    cfg.validate();
    FdeCost c;
    c.samples_per_cycle = static_cast<double>(cfg.n_fft - cfg.m + 1) / (cfg.delta * cfg.latency());
    c.samples_per_second = c.samples_per_cycle * cfg.clock_hz;
    c.throughput_mbps = c.samples_per_second * cfg.bits_per_sample / 1e6;
    c.c_fft = fde_complexity(cfg.n_fft, cfg.m, cfg.radix);
    return c;
}

TdceHwConfig match_throughput(const TdceHwConfig& base, double target_mbps, double tolerance, std::size_t max_lanes) {
    if (!(target_mbps > 0.0)) throw std::invalid_argument("target throughput must be positive");
    if (!(tolerance >= 0.0 && tolerance < 1.0)) throw std::invalid_argument("tolerance must be in [0, 1)");
    const std::size_t step = base.lp == 0 ? 1 : base.lp;
    TdceHwConfig cfg = base;
    for (std::size_t l = step; l <= max_lanes; l += step) {
        cfg.lanes = l;
        const double th = tdce_cost(cfg).throughput_mbps;
        if (th < (1.0 - tolerance) * target_mbps) continue;
        if (l > step && th > (1.0 + tolerance) * target_mbps)
            throw InfeasibleError("no lane count within " + std::to_string(tolerance * 100.0) + "% of " +
                                  std::to_string(target_mbps) + " Mb/s");
        return cfg;
    }
    throw InfeasibleError("target throughput needs more than " + std::to_string(max_lanes) + " lanes");
}

double calibrate_alpha(std::size_t m, std::size_t lanes, double target_mbps, double clock_hz, double bits_per_sample) {
    if (m == 0 || lanes == 0 || !(target_mbps > 0.0)) throw std::invalid_argument("invalid calibration point");
    return static_cast<double>(lanes) * clock_hz * bits_per_sample / (static_cast<double>(m) * target_mbps * 1e6);
}

double calibrate_fde_delta(std::size_t n_fft, std::size_t m, double latency_cycles, double target_mbps,
                           double clock_hz, double bits_per_sample) {
    if (n_fft <= m || !(latency_cycles > 0.0) || !(target_mbps > 0.0))
        throw std::invalid_argument("invalid calibration point");
    return static_cast<double>(n_fft - m + 1) * clock_hz * bits_per_sample / (latency_cycles * target_mbps * 1e6);
}

const std::vector<ReferenceDesign>& reference_designs() {
    static const std::vector<ReferenceDesign> table = {
        {1, 45, 31, 29, 9, 6, 256, 8, 10, 2, 2, 81.6, 83.3, 80.5},
        {2, 89, 53, 55, 10, 8, 256, 10, 12, 2, 2, 66.7, 75.9, 71.3},
        {4, 177, 97, 103, 10, 8, 1024, 18, 20, 2, 2, 75.6, 81.3, 79.5},
        {8, 353, 189, 201, 12, 12, 4096, 36, 36, 2, 2, 76.9, 76.9, 78.6},
    };
    return table;
}

const ReferenceDesign& reference_design(int spans) {
    for (const auto& d : reference_designs())
        if (d.spans == spans) return d;
    throw std::invalid_argument("no reference design for " + std::to_string(spans) + " spans");
}

double default_alpha() {
    const auto& d = reference_design(4);
    return calibrate_alpha(d.m_tdce, d.lanes_knn, d.th_knn_mbps);
}

double default_fde_delta() {
    const auto& d = reference_design(4);
    return calibrate_fde_delta(d.n_fft, d.m_fde, static_cast<double>(d.n_fft), d.th_fde_mbps);
}

}  // namespace tdce
