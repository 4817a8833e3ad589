#include "kexp/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace kexp {

namespace {

double inf_norm_move(const CentroidSet& a, const CentroidSet& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.cells.size(); ++i)
        m = std::max(m, std::abs(a.cells[i] - b.cells[i]));
    return m;
}

double squared_euclid(const double* a, const double* b, std::size_t p) {
    double d = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double r = a[j] - b[j];
        d += r * r;
    }
    return d;
}

// k-means++-style probabilistic seeding.
CentroidSet seed_centroids(const DataMatrix& data, std::size_t k,
                           std::uint64_t seed) {
    const std::size_t n = data.rows(), p = data.cols();
    std::mt19937_64 rng(seed);
    CentroidSet centers(k, p);
    std::vector<bool> chosen(n, false);
    std::vector<double> dist2(n, 0.0);

    std::size_t first = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    chosen[first] = true;
    for (std::size_t j = 0; j < p; ++j) centers(0, j) = data(first, j);
    for (std::size_t i = 0; i < n; ++i)
        dist2[i] = squared_euclid(data.row_ptr(i), centers.row_ptr(0), p);

    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += dist2[i];
        std::size_t pick = n;
        if (total > 0.0) {
            const double r = std::uniform_real_distribution<double>(0.0, total)(rng);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += dist2[i];
                if (r < acc) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) {  // r landed on the accumulated rounding tail
                for (std::size_t i = n; i-- > 0;)
                    if (dist2[i] > 0.0) {
                        pick = i;
                        break;
                    }
            }
        }
        if (pick == n) {  // all remaining points coincide with a center
            for (std::size_t i = 0; i < n; ++i)
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
        }
        chosen[pick] = true;
        for (std::size_t j = 0; j < p; ++j) centers(c, j) = data(pick, j);
        for (std::size_t i = 0; i < n; ++i)
            dist2[i] = std::min(dist2[i],
                                squared_euclid(data.row_ptr(i), centers.row_ptr(c), p));
    }
    return centers;
}

void check_k(const DataMatrix& data, std::size_t k) {
    if (k == 0) throw error("cluster count must be positive");
    if (k > data.rows())
        throw error("cluster count " + std::to_string(k) + " exceeds sample size " +
                    std::to_string(data.rows()));
}

}  // namespace

TauMatrix resolve_tau(const TauSpec& spec, std::size_t k, std::size_t p) {
    TauMatrix tau(k, p);
    switch (spec.shape) {
        case TauSpec::Shape::Scalar:
            for (double& t : tau.cells) t = spec.values[0];
            break;
        case TauSpec::Shape::PerDimension:
            if (spec.values.size() != p)
                throw error("per-dimension tau has " + std::to_string(spec.values.size()) +
                            " entries, expected " + std::to_string(p));
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t j = 0; j < p; ++j) tau(c, j) = spec.values[j];
            break;
        case TauSpec::Shape::PerCluster:
            if (spec.values.size() != k)
                throw error("per-cluster tau has " + std::to_string(spec.values.size()) +
                            " entries, expected " + std::to_string(k));
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t j = 0; j < p; ++j) tau(c, j) = spec.values[c];
            break;
        case TauSpec::Shape::Full:
            if (spec.full_k != k || spec.full_p != p)
                throw error("full tau matrix is " + std::to_string(spec.full_k) + "x" +
                            std::to_string(spec.full_p) + ", expected " +
                            std::to_string(k) + "x" + std::to_string(p));
            tau.cells = spec.values;
            break;
    }
    return tau;
}

Membership assign(const DataMatrix& data, const CentroidSet& centroids,
                  const TauMatrix& tau, bool parallel) {
    return parallel ? kernels::assign_parallel(data, centroids, tau)
                    : kernels::assign_serial(data, centroids, tau);
}

double objective(const DataMatrix& data, const Membership& membership,
                 const CentroidSet& centroids, const TauMatrix& tau,
                 bool parallel) {
    const auto costs = parallel
                           ? kernels::point_costs_parallel(data, membership, centroids, tau)
                           : kernels::point_costs_serial(data, membership, centroids, tau);
    double total = 0.0;
    for (double c : costs) total += c;
    return total;
}

CentroidSet update_centroids(const DataMatrix& data, const Membership& membership,
                             const TauMatrix& tau, const LawsConfig& cfg,
                             bool parallel) {
    const auto members = kernels::cluster_index(membership, tau.k);
    return parallel ? kernels::update_centroids_parallel(data, members, tau, cfg)
                    : kernels::update_centroids_serial(data, members, tau, cfg);
}

TauMatrix update_tau(const DataMatrix& data, const Membership& membership,
                     const CentroidSet& centroids, TauUpdateRule rule,
                     bool parallel) {
    const auto members = kernels::cluster_index(membership, centroids.k);
    return parallel ? kernels::update_tau_parallel(data, members, centroids, rule)
                    : kernels::update_tau_serial(data, members, centroids, rule);
}

int repair_empty_clusters(const DataMatrix& data, Membership& membership,
                          CentroidSet& centroids, const TauMatrix& tau) {
    const std::size_t k = centroids.k, p = data.cols();
    std::vector<std::size_t> sizes(k, 0);
    for (int c : membership) ++sizes[c];

    int repairs = 0;
    for (std::size_t e = 0; e < k; ++e) {
        if (sizes[e] != 0) continue;
        // Farthest point from its own center, among clusters that can spare one.
        std::size_t pick = data.rows();
        double best = -1.0;
        for (std::size_t i = 0; i < data.rows(); ++i) {
            const int c = membership[i];
            if (sizes[c] < 2) continue;
            const double d = kernels::cell_distance(data.row_ptr(i),
                                                    centroids.row_ptr(c),
                                                    tau.row_ptr(c), p);
            if (d > best) {
                best = d;
                pick = i;
            }
        }
        if (pick == data.rows()) throw error("cannot repair empty cluster");
        --sizes[membership[pick]];
        membership[pick] = static_cast<int>(e);
        ++sizes[e];
        for (std::size_t j = 0; j < p; ++j) centroids(e, j) = data(pick, j);
        ++repairs;
    }
    return repairs;
}

ClusterResult kmeans(const DataMatrix& data, std::size_t k,
                     const ClusterConfig& cfg) {
    check_k(data, k);
    const std::size_t p = data.cols();
    const TauMatrix half(k, p, 0.5);

    CentroidSet centers = seed_centroids(data, k, cfg.seed);
    Membership labels = assign(data, centers, half, cfg.parallel);
    repair_empty_clusters(data, labels, centers, half);

    ClusterResult result;
    result.seed = cfg.seed;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        centers = update_centroids(data, labels, half, cfg.laws, cfg.parallel);
        // Twice the tau-variance at tau = 0.5 is the within-cluster
        // sum of squares.
        result.objective_trace.push_back(
            2.0 * objective(data, labels, centers, half, cfg.parallel));
        result.iterations = it;

        Membership next = assign(data, centers, half, cfg.parallel);
        repair_empty_clusters(data, next, centers, half);
        if (next == labels) {
            result.converged = true;
            break;
        }
        labels = std::move(next);
    }
    result.membership = std::move(labels);
    result.centroids = std::move(centers);
    result.tau = half;
    return result;
}

CentroidSet init_centroids(const DataMatrix& data, std::size_t k,
                           std::uint64_t seed) {
    ClusterConfig cfg;
    cfg.seed = seed;
    return kmeans(data, k, cfg).centroids;
}

namespace {

// Consecutive identical assignments after which the adaptive scheme stops
// refitting the asymmetry levels.
constexpr int kAdaptFreezeRounds = 10;

// Shared outer loop of the fixed and adaptive schemes. When adapt is true
// the tau matrix is re-fit to the fresh centroids each iteration.
ClusterResult expectile_loop(const DataMatrix& data, std::size_t k,
                             TauMatrix tau, bool adapt,
                             const ClusterConfig& cfg) {
    ClusterResult result;
    result.seed = cfg.seed;

    CentroidSet centers = init_centroids(data, k, cfg.seed);
    Membership labels, prev_labels;
    int stable_rounds = 0;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        labels = assign(data, centers, tau, cfg.parallel);
        repair_empty_clusters(data, labels, centers, tau);
        stable_rounds = labels == prev_labels ? stable_rounds + 1 : 0;
        prev_labels = labels;

        CentroidSet next = update_centroids(data, labels, tau, cfg.laws, cfg.parallel);
        double move = inf_norm_move(next, centers);
        // The asymmetry levels adapt only while the partition is still in
        // flux. Once the membership has repeated for a few rounds, further
        // level updates just chase noise in the per-cluster columns (the
        // level target is not monotone in the center on multimodal columns
        // and can cycle forever), so the levels freeze and the loop winds
        // down like a fixed-level run. The decaying step averages the
        // update targets, which keeps the same fixed points but stops the
        // alternation from overshooting; stopping on centroid movement
        // alone would quit on the very first pass, since the seeding is
        // already a level-0.5 fixed point.
        if (adapt && stable_rounds < kAdaptFreezeRounds) {
            TauMatrix next_tau = update_tau(data, labels, next, cfg.tau_update,
                                            cfg.parallel);
            const double step = 1.0 / (it + 1);
            for (std::size_t i = 0; i < tau.cells.size(); ++i) {
                const double relaxed =
                    tau.cells[i] + step * (next_tau.cells[i] - tau.cells[i]);
                move = std::max(move, std::abs(relaxed - tau.cells[i]));
                tau.cells[i] = relaxed;
            }
        }
        centers = std::move(next);
        result.objective_trace.push_back(
            objective(data, labels, centers, tau, cfg.parallel));
        result.iterations = it;
        if (move <= cfg.tol) {
            result.converged = true;
            break;
        }
    }

    // Leave the membership consistent with the final centroids.
    Membership final_labels = assign(data, centers, tau, cfg.parallel);
    repair_empty_clusters(data, final_labels, centers, tau);
    if (final_labels != labels)
        result.objective_trace.push_back(
            objective(data, final_labels, centers, tau, cfg.parallel));

    result.membership = std::move(final_labels);
    result.centroids = std::move(centers);
    result.tau = std::move(tau);
    return result;
}

}  // namespace

ClusterResult fixed_tau_cluster(const DataMatrix& data, std::size_t k,
                                const TauSpec& spec, const ClusterConfig& cfg) {
    check_k(data, k);
    return expectile_loop(data, k, resolve_tau(spec, k, data.cols()), false, cfg);
}

ClusterResult adaptive_tau_cluster(const DataMatrix& data, std::size_t k,
                                   const ClusterConfig& cfg) {
    check_k(data, k);
    return expectile_loop(data, k, TauMatrix(k, data.cols(), 0.5), true, cfg);
}

}  // namespace kexp
