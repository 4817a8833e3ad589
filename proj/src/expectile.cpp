#include "kexp/expectile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kexp {

double rho_tau(double u, double tau) {
    AsymmetryLevel{tau};
    const double up = std::max(u, 0.0);
    const double dn = std::max(-u, 0.0);
    return tau * up * up + (1.0 - tau) * dn * dn;
}

double tau_distance(std::span<const double> x, std::span<const double> theta,
                    std::span<const double> tau) {
    if (x.size() != theta.size() || x.size() != tau.size())
        throw error("tau_distance: dimension mismatch");
    double d = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double r = x[j] - theta[j];
        const double w = x[j] < theta[j] ? 1.0 - tau[j] : tau[j];
        d += w * r * r;
    }
    return d;
}

double foc_residual(std::span<const double> series, double tau, double mu) {
    if (series.empty()) throw error("foc_residual: empty series");
    double above = 0.0, below = 0.0, total = 0.0;
    for (double x : series) {
        if (x > mu) above += x - mu;
        else if (x < mu) below += mu - x;
        total += std::abs(x - mu);
    }
    const double floor = std::numeric_limits<double>::min();
    return std::abs(tau * above - (1.0 - tau) * below) / std::max(total, floor);
}

ExpectileEstimate laws_expectile(std::span<const double> series, double tau,
                                 const LawsConfig& cfg) {
    if (series.empty()) throw error("laws_expectile: empty series");
    AsymmetryLevel{tau};

    double sum = 0.0;
    for (double x : series) sum += x;
    double mu = sum / static_cast<double>(series.size());

    ExpectileEstimate est;
    est.mu = mu;
    for (int t = 1; t <= cfg.max_iter; ++t) {
        // Points at mu join the below set (weight 1-tau); strictly above
        // takes tau, so the fixed point solves the asymmetric-loss FOC.
        double wsum = 0.0, wxsum = 0.0;
        for (double x : series) {
            const double w = x > mu ? tau : 1.0 - tau;
            wsum += w;
            wxsum += w * x;
        }
        const double next = wxsum / wsum;
        const double step = std::abs(next - mu);
        mu = next;
        est.iterations = t;
        if (step <= cfg.tol) {
            est.converged = true;
            break;
        }
    }
    est.mu = mu;
    est.foc_residual = foc_residual(series, tau, mu);
    return est;
}

double solve_tau_for_center(std::span<const double> series, double theta) {
    if (series.empty()) throw error("solve_tau_for_center: empty series");
    double above = 0.0, below = 0.0;
    for (double x : series) {
        if (x > theta) above += x - theta;
        else if (x < theta) below += theta - x;
    }
    if (above == 0.0 && below == 0.0) return 0.5;  // all points at theta
    if (above == 0.0) return 1.0 - kTauFloor;      // series entirely below
    if (below == 0.0) return kTauFloor;            // series entirely above
    const double gamma = below / above;
    const double tau = gamma / (1.0 + gamma);
    return std::clamp(tau, kTauFloor, 1.0 - kTauFloor);
}

double solve_tau_count_weighted(std::span<const double> series, double theta) {
    if (series.empty()) throw error("solve_tau_count_weighted: empty series");
    double above = 0.0, below = 0.0;
    std::size_t n_above = 0, n_below = 0;
    for (double x : series) {
        if (x > theta) {
            above += x - theta;
            ++n_above;
        } else if (x < theta) {
            below += theta - x;
            ++n_below;
        }
    }
    if (above == 0.0 && below == 0.0) return 0.5;
    if (above == 0.0) return 1.0 - kTauFloor;
    if (below == 0.0) return kTauFloor;
    // Ratio of mean deviations rather than total deviations: the count
    // normalization makes a long thin tail (large sum, few points) read as
    // strong asymmetry instead of cancelling against its own size.
    const double gamma = (below / static_cast<double>(n_below)) /
                         (above / static_cast<double>(n_above));
    const double tau = gamma / (1.0 + gamma);
    return std::clamp(tau, kTauFloor, 1.0 - kTauFloor);
}

}  // namespace kexp
