#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tdce/channel.hpp"
#include "tdce/clustering.hpp"
#include "tdce/costmodel.hpp"
#include "tdce/equalizer.hpp"
#include "tdce/fde.hpp"
#include "tdce/finetune.hpp"
#include "tdce/fixed_point.hpp"
#include "tdce/io.hpp"
#include "tdce/metrics.hpp"

namespace tdce {

enum class Design { direct, tdce, fde };

std::string to_string(Design d);
Design parse_design(const std::string& text);

struct EqualizeParams {
    Design design = Design::tdce;
    /// Filter length; 0 means the maximum for the channel.
    int m = 0;
    std::size_t lanes = 16;
    std::optional<FixedFormat> fmt;
    std::size_t fft_size = 256;
    Radix radix = Radix::radix4;
};

/// Runs one equalizer over a received block. `cf` is required for the TDCE
/// design and must match the filter length.
SignalBlock run_equalizer(const SignalBlock& rx, const ChannelSpec& spec, const EqualizeParams& p,
                          const ClusteredFilter* cf = nullptr, ConvolveStats* stats = nullptr);

/// Worker count from TDCE_WORKERS, else the hardware concurrency.
std::size_t worker_count();

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Results are
/// collected by index so the output order never depends on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t n, std::size_t workers, const std::function<T(std::size_t)>& fn);

struct ClusterSweepPoint {
    int n_clusters = 0;
    double ber = 0.0;
};

/// KNN clusters of the M-tap filter for each cluster count, equalized with
/// the TDCE engine and scored by BER.
std::vector<ClusterSweepPoint> cluster_sweep(const LinkData& link, int m, const std::vector<int>& cluster_counts,
                                             const std::optional<FixedFormat>& fmt, const KMeansOptions& kopts,
                                             std::size_t workers);

/// Adjacent pairs (a, b) in the sweep with ber(b) > ber(a).
int count_inversions(const std::vector<ClusterSweepPoint>& sweep);

/// Training rows from the leading symbols and a held-out evaluator over the
/// trailing `holdout_symbols`.
struct FinetuneSetup {
    TrainSet train;
    FeatureBerEvaluator evaluator;
};

FinetuneSetup prepare_finetune(const LinkData& link, const ClusteredFilter& cf, std::size_t holdout_symbols = 1U << 14);

/// Writes tx.bin, rx.bin and symbols.bin (each with a sidecar) into `dir`.
/// The rx sidecar names its companions so load_link can replay the run.
void save_link(const std::filesystem::path& dir, const LinkData& link);
/// Restores a saved link from its rx waveform path.
LinkData load_link(const std::filesystem::path& rx_path);

/// Complexity comparison per reference design (CSV).
std::string complexity_report_csv(double alpha, double fde_delta);
/// Same content as JSON.
io::Json complexity_report_json(double alpha, double fde_delta);

}  // namespace tdce

#include "tdce/detail/parallel_map.hpp"
