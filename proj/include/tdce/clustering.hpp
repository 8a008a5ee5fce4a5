#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tdce/taps.hpp"

namespace tdce {

/// N_C complex centroids plus the length-M routing map Q assigning every tap
/// position to a centroid.
struct ClusteredFilter {
    CVec centroids;
    std::vector<std::uint32_t> routing;

    std::size_t n_clusters() const { return centroids.size(); }
    std::size_t source_filter_len() const { return routing.size(); }

    /// Throws std::invalid_argument unless every routing entry is a valid
    /// cluster and every cluster is used at least once.
    void validate() const;
};

struct KMeansOptions {
    std::uint64_t seed = 0;
    int max_iter = 300;
    double tol = 1e-10;
    /// Independent k-means++ initialisations; the lowest-inertia run wins.
    int restarts = 50;
};

/// One Lloyd refinement from explicit starting centroids.
struct LloydRun {
    ClusteredFilter filter;
    double inertia = 0.0;
    /// Within-cluster sum of squares after each update step.
    std::vector<double> inertia_history;
    int iterations = 0;
};

LloydRun lloyd_refine(std::span<const cplx> points, CVec initial_centroids, const KMeansOptions& opts = {});

ClusteredFilter kmeans_cluster(const TapSet& taps, int n_clusters, const KMeansOptions& opts = {});

/// Taps implied by a clustered filter: taps[k] = centroids[routing[k]].
TapSet reconstruct_taps(const ClusteredFilter& cf);

struct ClusteringError {
    double max_abs = 0.0;
    double rms = 0.0;
};

ClusteringError clustering_error(const TapSet& taps, const ClusteredFilter& cf);

/// Nearest-centroid index for each point (ties go to the lowest index).
std::vector<std::uint32_t> assign_nearest(std::span<const cplx> points, std::span<const cplx> centroids);

/// Within-cluster sum of squared distances.
double within_cluster_ss(std::span<const cplx> points, const ClusteredFilter& cf);

}  // namespace tdce
