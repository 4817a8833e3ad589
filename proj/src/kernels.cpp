#include "kexp/kernels.hpp"

#include <cmath>

namespace kexp::kernels {

double cell_distance(const double* x, const double* theta, const double* tau,
                     std::size_t p) {
    double d = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double r = x[j] - theta[j];
        const double w = x[j] < theta[j] ? 1.0 - tau[j] : tau[j];
        d += w * r * r;
    }
    return d;
}

namespace {

int nearest(const DataMatrix& data, std::size_t i, const CentroidSet& centroids,
            const TauMatrix& tau) {
    const double* x = data.row_ptr(i);
    int best = 0;
    double best_d = cell_distance(x, centroids.row_ptr(0), tau.row_ptr(0), data.cols());
    for (std::size_t c = 1; c < centroids.k; ++c) {
        const double d = cell_distance(x, centroids.row_ptr(c), tau.row_ptr(c), data.cols());
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

void check_shapes(const DataMatrix& data, const CentroidSet& centroids,
                  const TauMatrix& tau) {
    if (centroids.p != data.cols() || tau.p != data.cols() || tau.k != centroids.k)
        throw error("shape mismatch between data, centroids and tau");
}

double laws_cell(const DataMatrix& data, const std::vector<std::size_t>& rows,
                 std::size_t j, double tau, const LawsConfig& cfg,
                 std::vector<double>& scratch) {
    scratch.clear();
    for (std::size_t i : rows) scratch.push_back(data(i, j));
    return laws_expectile(scratch, tau, cfg).mu;
}

double tau_cell(const DataMatrix& data, const std::vector<std::size_t>& rows,
                std::size_t j, double theta, TauUpdateRule rule,
                std::vector<double>& scratch) {
    scratch.clear();
    for (std::size_t i : rows) scratch.push_back(data(i, j));
    return rule == TauUpdateRule::CountWeighted
               ? solve_tau_count_weighted(scratch, theta)
               : solve_tau_for_center(scratch, theta);
}

}  // namespace

Membership assign_serial(const DataMatrix& data, const CentroidSet& centroids,
                         const TauMatrix& tau) {
    check_shapes(data, centroids, tau);
    Membership labels(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i)
        labels[i] = nearest(data, i, centroids, tau);
    return labels;
}

Membership assign_parallel(const DataMatrix& data, const CentroidSet& centroids,
                           const TauMatrix& tau) {
    check_shapes(data, centroids, tau);
    Membership labels(data.rows());
    const std::int64_t n = static_cast<std::int64_t>(data.rows());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        labels[i] = nearest(data, static_cast<std::size_t>(i), centroids, tau);
    return labels;
}

std::vector<double> point_costs_serial(const DataMatrix& data,
                                       const Membership& membership,
                                       const CentroidSet& centroids,
                                       const TauMatrix& tau) {
    check_shapes(data, centroids, tau);
    if (membership.size() != data.rows())
        throw error("membership length does not match data");
    std::vector<double> costs(data.rows());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const int c = membership[i];
        costs[i] = cell_distance(data.row_ptr(i), centroids.row_ptr(c),
                                 tau.row_ptr(c), data.cols());
    }
    return costs;
}

std::vector<double> point_costs_parallel(const DataMatrix& data,
                                         const Membership& membership,
                                         const CentroidSet& centroids,
                                         const TauMatrix& tau) {
    check_shapes(data, centroids, tau);
    if (membership.size() != data.rows())
        throw error("membership length does not match data");
    std::vector<double> costs(data.rows());
    const std::int64_t n = static_cast<std::int64_t>(data.rows());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const int c = membership[i];
        costs[i] = cell_distance(data.row_ptr(i), centroids.row_ptr(c),
                                 tau.row_ptr(c), data.cols());
    }
    return costs;
}

std::vector<std::vector<std::size_t>> cluster_index(const Membership& membership,
                                                    std::size_t k) {
    std::vector<std::vector<std::size_t>> buckets(k);
    for (std::size_t i = 0; i < membership.size(); ++i) {
        const int c = membership[i];
        if (c < 0 || static_cast<std::size_t>(c) >= k)
            throw error("cluster id " + std::to_string(c) + " out of range");
        buckets[c].push_back(i);
    }
    return buckets;
}

CentroidSet update_centroids_serial(const DataMatrix& data,
                                    const std::vector<std::vector<std::size_t>>& members,
                                    const TauMatrix& tau, const LawsConfig& cfg) {
    const std::size_t k = members.size(), p = data.cols();
    CentroidSet centroids(k, p);
    std::vector<double> scratch;
    for (std::size_t c = 0; c < k; ++c) {
        if (members[c].empty()) throw error("empty cluster in centroid update");
        for (std::size_t j = 0; j < p; ++j)
            centroids(c, j) = laws_cell(data, members[c], j, tau(c, j), cfg, scratch);
    }
    return centroids;
}

CentroidSet update_centroids_parallel(const DataMatrix& data,
                                      const std::vector<std::vector<std::size_t>>& members,
                                      const TauMatrix& tau, const LawsConfig& cfg) {
    const std::size_t k = members.size(), p = data.cols();
    for (const auto& m : members)
        if (m.empty()) throw error("empty cluster in centroid update");
    CentroidSet centroids(k, p);
    const std::int64_t cells = static_cast<std::int64_t>(k * p);
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(static)
        for (std::int64_t cell = 0; cell < cells; ++cell) {
            const std::size_t c = static_cast<std::size_t>(cell) / p;
            const std::size_t j = static_cast<std::size_t>(cell) % p;
            centroids(c, j) = laws_cell(data, members[c], j, tau(c, j), cfg, scratch);
        }
    }
    return centroids;
}

TauMatrix update_tau_serial(const DataMatrix& data,
                            const std::vector<std::vector<std::size_t>>& members,
                            const CentroidSet& centroids, TauUpdateRule rule) {
    const std::size_t k = members.size(), p = data.cols();
    TauMatrix tau(k, p);
    std::vector<double> scratch;
    for (std::size_t c = 0; c < k; ++c) {
        if (members[c].empty()) throw error("empty cluster in tau update");
        for (std::size_t j = 0; j < p; ++j)
            tau(c, j) = tau_cell(data, members[c], j, centroids(c, j), rule, scratch);
    }
    return tau;
}

TauMatrix update_tau_parallel(const DataMatrix& data,
                              const std::vector<std::vector<std::size_t>>& members,
                              const CentroidSet& centroids, TauUpdateRule rule) {
    const std::size_t k = members.size(), p = data.cols();
    for (const auto& m : members)
        if (m.empty()) throw error("empty cluster in tau update");
    TauMatrix tau(k, p);
    const std::int64_t cells = static_cast<std::int64_t>(k * p);
#pragma omp parallel
    {
        std::vector<double> scratch;
#pragma omp for schedule(static)
        for (std::int64_t cell = 0; cell < cells; ++cell) {
            const std::size_t c = static_cast<std::size_t>(cell) / p;
            const std::size_t j = static_cast<std::size_t>(cell) % p;
            tau(c, j) = tau_cell(data, members[c], j, centroids(c, j), rule, scratch);
        }
    }
    return tau;
}

}  // namespace kexp::kernels
