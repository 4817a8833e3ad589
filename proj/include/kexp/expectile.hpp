#pragma once

#include <span>

#include "kexp/types.hpp"

namespace kexp {

struct ExpectileEstimate {
    double mu = 0.0;
    int iterations = 0;
    double foc_residual = 0.0;
    bool converged = false;
};

struct LawsConfig {
    double tol = 1e-8;
    int max_iter = 1000;
};

// Asymmetric quadratic loss: tau*(u)+^2 + (1-tau)*(-u)+^2.
double rho_tau(double u, double tau);

// Weighted squared distance between two p-vectors: each coordinate weighted
// tau_j above the center and 1-tau_j below it.
double tau_distance(std::span<const double> x, std::span<const double> theta,
                    std::span<const double> tau);

// Normalized first-order-condition residual of mu as a candidate
// tau-expectile of the series. Zero at the exact expectile.
double foc_residual(std::span<const double> series, double tau, double mu);

// Iterated weighted-mean fixed point for the empirical tau-expectile.
// Starts at the sample mean; stops when |mu_t - mu_{t-1}| <= tol.
ExpectileEstimate laws_expectile(std::span<const double> series, double tau,
                                 const LawsConfig& cfg = {});

inline constexpr double kTauFloor = 0.01;

// Inverse problem: the tau level that makes theta the exact empirical
// expectile of the series, clamped to [kTauFloor, 1-kTauFloor].
// A series entirely on one side of theta degenerates to the nearer clamp
// boundary: all values above theta -> kTauFloor, all below -> 1-kTauFloor.
double solve_tau_for_center(std::span<const double> series, double theta);

// Count-weighted variant: gamma additionally carries the below/above point
// counts, so the result reflects how lopsided the membership is around
// theta. Unlike the exact inverse above this is not a fixed point of the
// estimator, which is what lets an adaptive loop drift away from 0.5.
double solve_tau_count_weighted(std::span<const double> series, double theta);

}  // namespace kexp
