#pragma once

#include <cstddef>
#include <vector>

#include "tdce/fde.hpp"

namespace tdce {

/// Real multiplications per complex multiplication in complexity figures.
inline constexpr std::size_t kComplexityRealMults = 4;
/// Hardware real multipliers per complex multiplier.
inline constexpr std::size_t kHardwareRealMults = 2;

/// Real multiplications per recovered sample for a clustered filter.
std::size_t clustered_complexity(std::size_t n_clusters);

struct TdceHwConfig {
    std::size_t m = 0;
    std::size_t n_c = 0;
    std::size_t lanes = 1;
    /// Complex multipliers in the dot-product stage; 0 selects the minimum.
    std::size_t lp = 0;
    /// Dataflow overhead constant, >= 1.
    double alpha = 1.0;
    double clock_hz = 250e6;
    /// Payload bits carried by one equalized sample.
    double bits_per_sample = 2.0;

    void validate() const;
};

struct TdceCost {
    std::size_t cycles_per_block = 0;
    double samples_per_cycle = 0.0;
    double samples_per_second = 0.0;
    double throughput_mbps = 0.0;
    std::size_t complex_mults_per_block = 0;
    /// Smallest divisor of L whose multiplications fit in one block period.
    std::size_t required_lp = 0;
    std::size_t real_multipliers = 0;
    std::size_t presum_memory_positions = 0;
    std::size_t real_mults_per_sample = 0;
    /// False when a configured lp is below required_lp.
    bool feasible = true;
};

TdceCost tdce_cost(const TdceHwConfig& cfg);

struct FdeHwConfig {
    std::size_t n_fft = 0;
    std::size_t m = 0;
    Radix radix = Radix::radix4;
    double delta = 1.0;
    /// FFT latency in cycles; 0 means n_fft.
    double latency_cycles = 0.0;
    double clock_hz = 250e6;
    double bits_per_sample = 2.0;

    void validate() const;
    double latency() const { return latency_cycles > 0.0 ? latency_cycles : static_cast<double>(n_fft); }
};

struct FdeCost {
    double samples_per_cycle = 0.0;
    double samples_per_second = 0.0;
    double throughput_mbps = 0.0;
    double c_fft = 0.0;
};

FdeCost fde_cost(const FdeHwConfig& cfg);

/// Smallest L (a multiple of lp, or of 1 when lp is 0) whose throughput is
/// at least (1 - tolerance) * target. Throws InfeasibleError when that L
/// overshoots by more than the tolerance or exceeds max_lanes.
TdceHwConfig match_throughput(const TdceHwConfig& base, double target_mbps, double tolerance = 0.07,
                              std::size_t max_lanes = 4096);

/// alpha that makes the given design hit target_mbps exactly.
double calibrate_alpha(std::size_t m, std::size_t lanes, double target_mbps, double clock_hz = 250e6,
                       double bits_per_sample = 2.0);

/// delta that makes an FDE with the given latency hit target_mbps exactly.
double calibrate_fde_delta(std::size_t n_fft, std::size_t m, double latency_cycles, double target_mbps,
                           double clock_hz = 250e6, double bits_per_sample = 2.0);

/// Published design points used for calibration and reports.
struct ReferenceDesign {
    int spans;
    std::size_t n;
    std::size_t m_tdce;
    std::size_t m_fde;
    std::size_t nc_knn;
    std::size_t nc_gd;
    std::size_t n_fft;
    std::size_t lanes_gd;
    std::size_t lanes_knn;
    std::size_t lp_gd;
    std::size_t lp_knn;
    double th_gd_mbps;
    double th_knn_mbps;
    double th_fde_mbps;
};

const std::vector<ReferenceDesign>& reference_designs();
const ReferenceDesign& reference_design(int spans);

/// alpha fitted on the 4-span KNN design point.
double default_alpha();
/// delta (with latency = n_fft) fitted on the 4-span FDE design point.
double default_fde_delta();

}  // namespace tdce
