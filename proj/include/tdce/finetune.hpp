#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tdce/channel.hpp"
#include "tdce/clustering.hpp"
#include "tdce/signal.hpp"

namespace tdce {

/// Pre-summed windows (features) and the transmitted samples they should
/// reproduce (labels). The clustered filter is linear in its centroids, so
/// fine-tuning is a complex least-squares problem over these rows.
struct TrainSet {
    /// Contiguous rows taken from one polarization.
    struct Segment {
        std::size_t pol = 0;
        std::size_t first_row = 0;
        std::size_t rows = 0;
        /// Transmitted-timeline index of the first row's output sample.
        std::int64_t offset = 0;
    };

    std::size_t n_clusters = 0;
    CVec features;  // rows x n_clusters, row-major
    CVec labels;
    std::vector<Segment> segments;

    std::size_t rows() const { return labels.size(); }
    bool empty() const { return labels.empty(); }
    std::span<const cplx> row(std::size_t i) const { return {features.data() + i * n_clusters, n_clusters}; }
};

/// Features for every fully-overlapped window of rx; labels are the tx
/// samples at the window centre, i.e. delayed by (M - 1) / 2.
TrainSet build_trainset(const SignalBlock& rx, const SignalBlock& tx, const ClusteredFilter& cf);

/// Output of the linear model for one row.
cplx predict(std::span<const cplx> features, std::span<const cplx> weights);

/// Mean squared complex error over `rows` (all rows when empty).
double mse_loss(const TrainSet& ts, std::span<const cplx> weights, std::span<const std::size_t> rows = {});

/// dL/d conj(w) = mean conj(features) * (prediction - label). The gradient
/// with respect to (Re w, Im w) is (2 Re g, 2 Im g).
CVec wirtinger_gradient(const TrainSet& ts, std::span<const cplx> weights, std::span<const std::size_t> rows = {});

/// Plain full-batch gradient descent; returns the loss before each step and
/// after the last.
std::vector<double> gradient_descent(const TrainSet& ts, CVec& weights, double lr, int steps);

struct FinetuneOptions {
    double lr = 1e-5;
    int epochs = 400;
    std::size_t samples_per_epoch = 1U << 16;
    /// Rows per Adam update within an epoch.
    std::size_t minibatch = 1024;
    int patience = 50;
    std::uint64_t seed = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct EpochRecord {
    int epoch = 0;
    double loss = 0.0;
    double ber = 0.0;
    double best_ber = 0.0;
};

struct FinetuneResult {
    CVec centroids;
    std::vector<EpochRecord> history;
    int best_epoch = 0;
    int epochs_run = 0;
    double initial_ber = 0.0;
    double best_ber = 0.0;
};

using BerFunction = std::function<double(std::span<const cplx>)>;

/// Adam on the centroids. Epoch 0 in the history is the starting point; the
/// returned centroids are those with the lowest BER seen, and training stops
/// after `patience` epochs without a BER improvement.
FinetuneResult adam_finetune(const TrainSet& ts, std::span<const cplx> init_centroids, const FinetuneOptions& opts,
                             const BerFunction& ber);

/// BER of the clustered filter with candidate centroids on a held-out slice.
class FeatureBerEvaluator {
public:
    FeatureBerEvaluator(TrainSet eval, SymbolStream reference, PulseFilter pulse);

    double operator()(std::span<const cplx> weights) const;

    const TrainSet& eval_set() const { return eval_; }

private:
    TrainSet eval_;
    SymbolStream reference_;
    PulseFilter pulse_;
};

}  // namespace tdce
