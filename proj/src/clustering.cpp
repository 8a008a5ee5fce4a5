#include "tdce/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace tdce {

void ClusteredFilter::validate() const {
    if (centroids.empty()) throw std::invalid_argument("clustered filter has no centroids");
    if (centroids.size() > routing.size())
        throw std::invalid_argument("more clusters than filter taps");
    std::vector<bool> used(centroids.size(), false);
    for (const auto r : routing) {
        if (r >= centroids.size())
            throw std::invalid_argument("routing entry " + std::to_string(r) + " out of range");
        used[r] = true;
    }
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::invalid_argument("clustered filter has an empty cluster");
}

namespace {

double dist2(cplx a, cplx b) { return std::norm(a - b); }

CVec seed_plus_plus(std::span<const cplx> pts, std::size_t k, std::mt19937_64& rng) {
    CVec centers;
    centers.reserve(k);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    centers.push_back(pts[pick(rng)]);
    std::vector<double> d2(pts.size());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centers) best = std::min(best, dist2(pts[i], c));
            d2[i] = best;
            total += best;
        }
        std::size_t chosen = pts.size() - 1;
        if (total > 0.0) {
            const double target = unit(rng) * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                acc += d2[i];
                if (acc > target) {
                    chosen = i;
                    break;
                }
            }
        } else {
            // All points coincide with existing centers; any point will do
            // and the empty-cluster repair sorts out the labels.
            chosen = pick(rng);
        }
        centers.push_back(pts[chosen]);
    }
    return centers;
}

// Moves the point farthest from its centroid (taken from a cluster with more
// than one member) into each empty cluster.
void repair_empty(std::span<const cplx> pts, const CVec& centroids, std::vector<std::uint32_t>& labels,
                  std::size_t k) {
    std::vector<std::size_t> sizes(k, 0);
    for (auto l : labels) ++sizes[l];
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0) continue;
        std::size_t far = pts.size();
        double far_d = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (sizes[labels[i]] < 2) continue;
            const double d = dist2(pts[i], centroids[labels[i]]);
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        if (far == pts.size()) throw std::logic_error("cannot repair empty cluster");
        --sizes[labels[far]];
        labels[far] = static_cast<std::uint32_t>(c);
        sizes[c] = 1;
    }
}

}  // namespace

LloydRun lloyd_refine(std::span<const cplx> pts, CVec centroids, const KMeansOptions& opts) {
    if (centroids.empty() || centroids.size() > pts.size())
        throw std::invalid_argument("need between 1 and point-count initial centroids");
    LloydRun run;
    const std::size_t k = centroids.size();
    std::vector<std::uint32_t> labels = assign_nearest(pts, centroids);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (iter > 0) {
            // Keep the current label on ties so duplicate centroids stay stable.
            for (std::size_t i = 0; i < pts.size(); ++i) {
                std::uint32_t best = labels[i];
                double best_d = dist2(pts[i], centroids[best]);
                for (std::uint32_t c = 0; c < k; ++c) {
                    const double d = dist2(pts[i], centroids[c]);
                    if (d < best_d) {
                        best_d = d;
                        best = c;
                    }
                }
                labels[i] = best;
            }
        }
        repair_empty(pts, centroids, labels, k);

        CVec sums(k, cplx{});
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            sums[labels[i]] += pts[i];
            ++counts[labels[i]];
        }
        double shift = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const cplx updated = sums[c] / static_cast<double>(counts[c]);
            shift = std::max(shift, std::abs(updated - centroids[c]));
            centroids[c] = updated;
        }
        double inertia = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) inertia += dist2(pts[i], centroids[labels[i]]);
        run.inertia_history.push_back(inertia);
        run.iterations = iter + 1;
        if (shift < opts.tol) break;
    }
    run.filter = ClusteredFilter{std::move(centroids), std::move(labels)};
    run.inertia = run.inertia_history.empty() ? 0.0 : run.inertia_history.back();
    return run;
}

std::vector<std::uint32_t> assign_nearest(std::span<const cplx> points, std::span<const cplx> centroids) {
    std::vector<std::uint32_t> labels(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            const double d = dist2(points[i], centroids[c]);
            if (d < best) {
                best = d;
                labels[i] = static_cast<std::uint32_t>(c);
            }
        }
    }
    return labels;
}

ClusteredFilter kmeans_cluster(const TapSet& taps, int n_clusters, const KMeansOptions& opts) {
    if (n_clusters < 1) throw std::invalid_argument("n_clusters must be >= 1");
    if (static_cast<std::size_t>(n_clusters) > taps.size())
        throw std::invalid_argument("n_clusters (" + std::to_string(n_clusters) + ") exceeds filter length (" +
                                    std::to_string(taps.size()) + ")");
    if (opts.max_iter < 1 || !(opts.tol > 0.0) || opts.restarts < 1)
        throw std::invalid_argument("invalid k-means options");

    std::mt19937_64 rng(opts.seed);
    const std::span<const cplx> pts(taps.taps);
    LloydRun best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opts.restarts; ++r) {
        auto run = lloyd_refine(pts, seed_plus_plus(pts, static_cast<std::size_t>(n_clusters), rng), opts);
        if (run.inertia < best.inertia) best = std::move(run);
    }
    return std::move(best.filter);
}

TapSet reconstruct_taps(const ClusteredFilter& cf) {
    cf.validate();
    TapSet out;
    out.taps.reserve(cf.routing.size());
    for (auto r : cf.routing) out.taps.push_back(cf.centroids[r]);
    return out;
}

ClusteringError clustering_error(const TapSet& taps, const ClusteredFilter& cf) {
    if (taps.size() != cf.routing.size())
        throw std::invalid_argument("tap count does not match routing length");
    ClusteringError err;
    if (taps.size() == 0) return err;
    double sq = 0.0;
    for (std::size_t k = 0; k < taps.size(); ++k) {
        const double d = std::abs(taps.taps[k] - cf.centroids.at(cf.routing[k]));
        err.max_abs = std::max(err.max_abs, d);
        sq += d * d;
    }
    err.rms = std::sqrt(sq / static_cast<double>(taps.size()));
    return err;
}

double within_cluster_ss(std::span<const cplx> points, const ClusteredFilter& cf) {
    if (points.size() != cf.routing.size()) throw std::invalid_argument("point count does not match routing");
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) s += dist2(points[i], cf.centroids.at(cf.routing[i]));
    return s;
}

}  // namespace tdce
