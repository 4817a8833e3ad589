#pragma once

#include "kexp/kernels.hpp"
#include "kexp/types.hpp"

namespace kexp {

using kernels::TauUpdateRule;

struct ClusterConfig {
    std::uint64_t seed = 0;
    int max_iter = 300;
    double tol = 1e-6;           // inf-norm threshold on centroid movement
    LawsConfig laws;
    TauUpdateRule tau_update = TauUpdateRule::CountWeighted;
    bool parallel = true;        // serial reference path when false
};

// Broadcast a tau shape to the full K x p matrix.
TauMatrix resolve_tau(const TauSpec& spec, std::size_t k, std::size_t p);

Membership assign(const DataMatrix& data, const CentroidSet& centroids,
                  const TauMatrix& tau, bool parallel = true);

// Sum of within-cluster tau-variance.
double objective(const DataMatrix& data, const Membership& membership,
                 const CentroidSet& centroids, const TauMatrix& tau,
                 bool parallel = true);

CentroidSet update_centroids(const DataMatrix& data, const Membership& membership,
                             const TauMatrix& tau, const LawsConfig& cfg = {},
                             bool parallel = true);

TauMatrix update_tau(const DataMatrix& data, const Membership& membership,
                     const CentroidSet& centroids,
                     TauUpdateRule rule = TauUpdateRule::CountWeighted,
                     bool parallel = true);

// Re-seeds each empty cluster at the point farthest (in tau-distance) from
// its current center, and moves that point over. Deterministic; ties break
// to the lowest index. Returns the number of repairs.
int repair_empty_clusters(const DataMatrix& data, Membership& membership,
                          CentroidSet& centroids, const TauMatrix& tau);

// Lloyd iteration from k-means++-style seeding. Terminates when the
// membership stops changing, so the final state is self-consistent.
ClusterResult kmeans(const DataMatrix& data, std::size_t k,
                     const ClusterConfig& cfg = {});

// Centroids of the k-means baseline for the given seed.
CentroidSet init_centroids(const DataMatrix& data, std::size_t k,
                           std::uint64_t seed);

ClusterResult fixed_tau_cluster(const DataMatrix& data, std::size_t k,
                                const TauSpec& spec, const ClusterConfig& cfg = {});

ClusterResult adaptive_tau_cluster(const DataMatrix& data, std::size_t k,
                                   const ClusterConfig& cfg = {});

}  // namespace kexp
