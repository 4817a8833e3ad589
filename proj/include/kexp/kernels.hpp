#pragma once

#include "kexp/expectile.hpp"
#include "kexp/types.hpp"

// Data-parallel inner loops of the clustering engines. Each kernel exists
// twice: a plain-loop serial reference and an OpenMP version. The parallel
// versions must be bit-identical to the serial ones, so every reduction
// keeps a fixed summation order (per-point or per-cell results are written
// to independent slots and folded sequentially).

namespace kexp::kernels {

// Per-point squared distance to a center row under the tau weights.
double cell_distance(const double* x, const double* theta, const double* tau,
                     std::size_t p);

// Nearest-center assignment under the tau-distance; ties break to the
// lowest cluster index.
Membership assign_serial(const DataMatrix& data, const CentroidSet& centroids,
                         const TauMatrix& tau);
Membership assign_parallel(const DataMatrix& data, const CentroidSet& centroids,
                           const TauMatrix& tau);

// Cost of each point against its assigned center. The objective is the
// sequential fold of this vector in row order.
std::vector<double> point_costs_serial(const DataMatrix& data,
                                       const Membership& membership,
                                       const CentroidSet& centroids,
                                       const TauMatrix& tau);
std::vector<double> point_costs_parallel(const DataMatrix& data,
                                         const Membership& membership,
                                         const CentroidSet& centroids,
                                         const TauMatrix& tau);

// Row indices of each cluster in ascending order; k buckets.
std::vector<std::vector<std::size_t>> cluster_index(const Membership& membership,
                                                    std::size_t k);

// Per-(cluster, dimension) expectile of the member column. Cells are
// independent, so any schedule reproduces the serial result.
CentroidSet update_centroids_serial(const DataMatrix& data,
                                    const std::vector<std::vector<std::size_t>>& members,
                                    const TauMatrix& tau, const LawsConfig& cfg);
CentroidSet update_centroids_parallel(const DataMatrix& data,
                                      const std::vector<std::vector<std::size_t>>& members,
                                      const TauMatrix& tau, const LawsConfig& cfg);

// CountWeighted (the default) lets the asymmetry level track how lopsided
// each cluster column sits around its center; ExactInverse returns the
// level whose expectile is exactly the center, which never moves the level
// once the center is a converged estimate.
enum class TauUpdateRule { CountWeighted, ExactInverse };

TauMatrix update_tau_serial(const DataMatrix& data,
                            const std::vector<std::vector<std::size_t>>& members,
                            const CentroidSet& centroids, TauUpdateRule rule);
TauMatrix update_tau_parallel(const DataMatrix& data,
                              const std::vector<std::vector<std::size_t>>& members,
                              const CentroidSet& centroids, TauUpdateRule rule);

}  // namespace kexp::kernels
