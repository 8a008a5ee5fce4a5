#include "tdce/finetune.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "tdce/metrics.hpp"
#include "tdce/presum.hpp"

namespace tdce {

TrainSet build_trainset(const SignalBlock& rx, const SignalBlock& tx, const ClusteredFilter& cf) {
    cf.validate();
    rx.validate();
    tx.validate();
    if (rx.polarizations() != tx.polarizations()) throw std::invalid_argument("rx and tx polarization counts differ");
    if (rx.sample_rate_hz != tx.sample_rate_hz) throw std::invalid_argument("rx and tx sample rates differ");

    const std::size_t m = cf.source_filter_len();
    const std::size_t nc = cf.n_clusters();
    TrainSet ts;
    ts.n_clusters = nc;
    if (rx.length() < m) return ts;

    const std::size_t rows = rx.length() - m + 1;
    const auto delay = static_cast<std::int64_t>((m - 1) / 2);
    const std::int64_t first_label = rx.offset + delay - tx.offset;
    if (first_label < 0 || first_label + static_cast<std::int64_t>(rows) > static_cast<std::int64_t>(tx.length()))
        throw std::invalid_argument("tx does not cover the labels of every rx window");

    constexpr std::size_t kLanes = 64;
    ts.features.resize(rows * nc * rx.polarizations());
    ts.labels.reserve(rows * rx.polarizations());
    for (std::size_t p = 0; p < rx.polarizations(); ++p) {
        const std::size_t base = ts.labels.size();
        const std::span<const cplx> x(rx.pols[p]);
        for (std::size_t n0 = 0; n0 < rows; n0 += kLanes) {
            const std::size_t l = std::min(kLanes, rows - n0);
            std::span<cplx> out(ts.features.data() + (base + n0) * nc, l * nc);
            kernel::presum_parallel<cplx>(x.subspan(n0, m + l - 1), cf.routing, l, nc, out);
        }
        const auto* lab = tx.pols[p].data() + first_label;
        ts.labels.insert(ts.labels.end(), lab, lab + rows);
        ts.segments.push_back({p, base, rows, rx.offset + delay});
    }
    return ts;
}

cplx predict(std::span<const cplx> features, std::span<const cplx> weights) {
    cplx acc{};
    for (std::size_t k = 0; k < weights.size(); ++k) acc += features[k] * weights[k];
    return acc;
}

namespace {

void check_dims(const TrainSet& ts, std::span<const cplx> w) {
    if (w.size() != ts.n_clusters) throw std::invalid_argument("weight count does not match cluster count");
}

template <class F>
void for_rows(const TrainSet& ts, std::span<const std::size_t> rows, F&& f) {
    if (rows.empty()) {
        for (std::size_t i = 0; i < ts.rows(); ++i) f(i);
    } else {
        for (auto i : rows) f(i);
    }
}

}  // namespace

double mse_loss(const TrainSet& ts, std::span<const cplx> weights, std::span<const std::size_t> rows) {
    check_dims(ts, weights);
    if (ts.empty()) throw std::invalid_argument("empty training set");
    double acc = 0.0;
    for_rows(ts, rows, [&](std::size_t i) { acc += std::norm(predict(ts.row(i), weights) - ts.labels[i]); });
    const std::size_t n = rows.empty() ? ts.rows() : rows.size();
    return acc / static_cast<double>(n);
}

CVec wirtinger_gradient(const TrainSet& ts, std::span<const cplx> weights, std::span<const std::size_t> rows) {
    check_dims(ts, weights);
    if (ts.empty()) throw std::invalid_argument("empty training set");
    CVec g(ts.n_clusters, cplx{});
    for_rows(ts, rows, [&](std::size_t i) {
        const auto f = ts.row(i);
        const cplx err = predict(f, weights) - ts.labels[i];
        for (std::size_t k = 0; k < g.size(); ++k) g[k] += std::conj(f[k]) * err;
    });
    const double n = static_cast<double>(rows.empty() ? ts.rows() : rows.size());
    for (auto& v : g) v /= n;
    return g;
}

std::vector<double> gradient_descent(const TrainSet& ts, CVec& weights, double lr, int steps) {
    std::vector<double> losses;
    losses.push_back(mse_loss(ts, weights));
    for (int s = 0; s < steps; ++s) {
        const CVec g = wirtinger_gradient(ts, weights);
        for (std::size_t k = 0; k < g.size(); ++k) weights[k] -= lr * 2.0 * g[k];
        losses.push_back(mse_loss(ts, weights));
    }
    return losses;
}

FinetuneResult adam_finetune(const TrainSet& ts, std::span<const cplx> init_centroids, const FinetuneOptions& opts,
                             const BerFunction& ber) {
    if (ts.empty()) throw std::invalid_argument("empty training set");
    check_dims(ts, init_centroids);
    if (opts.epochs < 0 || opts.patience < 1 || opts.samples_per_epoch == 0 || opts.minibatch == 0)
        throw std::invalid_argument("invalid fine-tuning options");
    if (!ber) throw std::invalid_argument("a BER evaluator is required");

    const std::size_t nc = ts.n_clusters;
    CVec w(init_centroids.begin(), init_centroids.end());
    // Adam moments over the real parameter vector (Re w, Im w).
    std::vector<double> m1(2 * nc, 0.0), m2(2 * nc, 0.0);
    std::mt19937_64 rng(opts.seed);

    FinetuneResult res;
    res.centroids = w;
    res.initial_ber = ber(w);
    res.best_ber = res.initial_ber;
    res.history.push_back({0, mse_loss(ts, w), res.initial_ber, res.best_ber});

    std::vector<std::size_t> pool(ts.rows());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    const std::size_t per_epoch = std::min(opts.samples_per_epoch, ts.rows());
    std::uniform_int_distribution<std::size_t> any_row(0, ts.rows() - 1);
    std::vector<std::size_t> drawn(opts.samples_per_epoch);

    long step = 0;
    int stale = 0;
    for (int epoch = 1; epoch <= opts.epochs; ++epoch) {
        if (opts.samples_per_epoch <= ts.rows()) {
            // Partial Fisher-Yates: a uniform sample without replacement.
            for (std::size_t i = 0; i < per_epoch; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            std::copy_n(pool.begin(), per_epoch, drawn.begin());
        } else {
            for (auto& d : drawn) d = any_row(rng);
        }

        for (std::size_t b = 0; b < drawn.size(); b += opts.minibatch) {
            const std::size_t len = std::min(opts.minibatch, drawn.size() - b);
            const CVec g = wirtinger_gradient(ts, w, std::span<const std::size_t>(drawn.data() + b, len));
            ++step;
            const double c1 = 1.0 - std::pow(opts.beta1, static_cast<double>(step));
            const double c2 = 1.0 - std::pow(opts.beta2, static_cast<double>(step));
            for (std::size_t k = 0; k < nc; ++k) {
                const double grad[2] = {2.0 * g[k].real(), 2.0 * g[k].imag()};
                double upd[2];
                for (int part = 0; part < 2; ++part) {
                    double& mm = m1[2 * k + part];
                    double& vv = m2[2 * k + part];
                    mm = opts.beta1 * mm + (1.0 - opts.beta1) * grad[part];
                    vv = opts.beta2 * vv + (1.0 - opts.beta2) * grad[part] * grad[part];
                    upd[part] = opts.lr * (mm / c1) / (std::sqrt(vv / c2) + opts.epsilon);
                }
                w[k] -= cplx(upd[0], upd[1]);
            }
        }

        const double loss = mse_loss(ts, w, drawn);
        const double b = ber(w);
        res.epochs_run = epoch;
        if (b < res.best_ber) {
            res.best_ber = b;
            res.best_epoch = epoch;
            res.centroids = w;
            stale = 0;
        } else {
            ++stale;
        }
        res.history.push_back({epoch, loss, b, res.best_ber});
        if (stale >= opts.patience) break;
    }
    return res;
}

FeatureBerEvaluator::FeatureBerEvaluator(TrainSet eval, SymbolStream reference, PulseFilter pulse)
    : eval_(std::move(eval)), reference_(std::move(reference)), pulse_(std::move(pulse)) {
    for (const auto& seg : eval_.segments)
        if (seg.pol >= reference_.symbols.size())
            throw std::invalid_argument("evaluation segment refers to a missing polarization");
}

double FeatureBerEvaluator::operator()(std::span<const cplx> weights) const {
    check_dims(eval_, weights);
    BerResult total;
    CVec y;
    for (const auto& seg : eval_.segments) {
        y.resize(seg.rows);
        for (std::size_t i = 0; i < seg.rows; ++i) y[i] = predict(eval_.row(seg.first_row + i), weights);
        const auto r = evaluate_ber(y, seg.offset, reference_.symbols[seg.pol], reference_.bits[seg.pol], pulse_);
        total.bit_errors += r.bit_errors;
        total.bits += r.bits;
    }
    return total.ber();
}

}  // namespace tdce
