#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "kexp/expectile.hpp"

using namespace kexp;

namespace {

std::vector<double> random_series(std::mt19937_64& rng, std::size_t len) {
    std::normal_distribution<double> d(0.0, 3.0);
    std::vector<double> s(len);
    for (double& x : s) x = d(rng);
    return s;
}

double loss_sum(const std::vector<double>& s, double tau, double mu) {
    double total = 0.0;
    for (double x : s) total += rho_tau(x - mu, tau);
    return total;
}

}  // namespace

TEST_CASE("rho_tau hand values") {
    CHECK(rho_tau(0.0, 0.3) == 0.0);
    CHECK(rho_tau(1.0, 0.3) == doctest::Approx(0.3));
    CHECK(rho_tau(-1.0, 0.3) == doctest::Approx(0.7));
    CHECK(rho_tau(2.0, 0.5) == doctest::Approx(2.0));
    CHECK_THROWS_AS(rho_tau(1.0, 0.0), error);
    CHECK_THROWS_AS(rho_tau(1.0, 1.0), error);
}

TEST_CASE("tau_distance hand values") {
    const std::vector<double> tau1{0.3};
    CHECK(tau_distance(std::vector<double>{2.0}, std::vector<double>{2.0}, tau1) == 0.0);
    // x below the center takes the 1-tau weight.
    CHECK(tau_distance(std::vector<double>{1.0}, std::vector<double>{2.0}, tau1) ==
          doctest::Approx(0.7));
    const std::vector<double> half{0.5, 0.5};
    CHECK(tau_distance(std::vector<double>{1.0, 1.0}, std::vector<double>{0.0, 0.0},
                       half) == doctest::Approx(1.0));
    CHECK_THROWS_AS(tau_distance(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0},
                                 half),
                    error);
}

TEST_CASE("tau_distance at 0.5 is exactly half the squared euclidean") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> d(0.0, 5.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(6), theta(6), half(6, 0.5);
        for (auto& v : x) v = d(rng);
        for (auto& v : theta) v = d(rng);
        double sq = 0.0;
        for (int j = 0; j < 6; ++j) sq += 0.5 * (x[j] - theta[j]) * (x[j] - theta[j]);
        CHECK(tau_distance(x, theta, half) == sq);
    }
}

TEST_CASE("laws_expectile hand values") {
    SUBCASE("constant series") {
        const std::vector<double> s{4.0, 4.0, 4.0};
        const auto est = laws_expectile(s, 0.7);
        CHECK(est.mu == 4.0);
        CHECK(est.iterations <= 1);
    }
    SUBCASE("two-point series") {
        const auto est = laws_expectile(std::vector<double>{0.0, 1.0}, 0.25);
        CHECK(est.mu == doctest::Approx(0.25).epsilon(1e-9));
    }
    SUBCASE("three-point upper tail") {
        const auto est = laws_expectile(std::vector<double>{1.0, 2.0, 3.0}, 0.9);
        CHECK(est.mu == doctest::Approx(30.0 / 11.0).epsilon(1e-9));
    }
    SUBCASE("tau 0.5 is the mean") {
        const auto est = laws_expectile(std::vector<double>{1.0, 2.0, 3.0}, 0.5);
        CHECK(est.mu == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(laws_expectile(std::vector<double>{}, 0.5), error);
}

TEST_CASE("foc_residual hand values") {
    const std::vector<double> s{0.0, 1.0};
    CHECK(foc_residual(s, 0.25, 0.25) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(foc_residual(s, 0.5, 0.5) == 0.0);
    CHECK(foc_residual(s, 0.5, 0.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(foc_residual(std::vector<double>{}, 0.5, 0.0), error);
}

TEST_CASE("solve_tau_for_center hand values") {
    const std::vector<double> s{0.0, 1.0};
    CHECK(solve_tau_for_center(s, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(solve_tau_for_center(s, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(solve_tau_for_center(std::vector<double>{1.0, 2.0, 3.0}, 30.0 / 11.0) ==
          doctest::Approx(0.9).epsilon(1e-9));
    // One-sided degeneracies clamp toward the achievable boundary.
    CHECK(solve_tau_for_center(std::vector<double>{5.0, 6.0}, 1.0) == kTauFloor);
    CHECK(solve_tau_for_center(std::vector<double>{5.0, 6.0}, 9.0) == 1.0 - kTauFloor);
}

TEST_CASE("laws properties on random series") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> len(2, 60);
    for (int rep = 0; rep < 200; ++rep) {
        const auto s = random_series(rng, len(rng));
        const double lo = *std::min_element(s.begin(), s.end());
        const double hi = *std::max_element(s.begin(), s.end());

        double prev_mu = -1e300;
        for (double tau : {0.05, 0.2, 0.5, 0.8, 0.95}) {
            const auto est = laws_expectile(s, tau);
            CHECK(est.converged);
            CHECK(est.mu >= lo);
            CHECK(est.mu <= hi);
            CHECK(est.mu >= prev_mu - 1e-10);  // monotone in tau
            prev_mu = est.mu;

            // Local minimum of the convex loss.
            const double delta = 1e-4 * (hi - lo);
            if (delta > 0.0) {
                const double at = loss_sum(s, tau, est.mu);
                CHECK(at <= loss_sum(s, tau, est.mu + delta) + 1e-12);
                CHECK(at <= loss_sum(s, tau, est.mu - delta) + 1e-12);
            }

            // Round trip through the inverse problem.
            if (hi > lo) {
                CHECK(solve_tau_for_center(s, est.mu) ==
                      doctest::Approx(tau).epsilon(1e-6));
            }
        }

        const auto mean_est = laws_expectile(s, 0.5);
        double mean = 0.0;
        for (double x : s) mean += x;
        mean /= static_cast<double>(s.size());
        CHECK(mean_est.mu == doctest::Approx(mean).epsilon(1e-10));
    }
}

TEST_CASE("count-weighted tau update") {
    SUBCASE("balanced counts agree with the exact inverse") {
        const std::vector<double> s{0.0, 1.0};
        CHECK(solve_tau_count_weighted(s, 0.25) ==
              doctest::Approx(solve_tau_for_center(s, 0.25)).epsilon(1e-12));
    }
    SUBCASE("lopsided membership moves tau off the exact inverse") {
        // Mean deviation below the center is 3/3 = 1, above is 3/1 = 3, so
        // the single far point reads as a heavy upper tail and tau drops
        // below the self-consistent 0.5.
        const std::vector<double> s{0.0, 0.0, 0.0, 4.0};
        const double exact = solve_tau_for_center(s, 1.0);   // 0.5 at the mean
        const double skewed = solve_tau_count_weighted(s, 1.0);
        CHECK(exact == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(skewed == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("one-sided series clamp") {
        const std::vector<double> s{2.0, 3.0};
        CHECK(solve_tau_count_weighted(s, 1.0) == kTauFloor);
        CHECK(solve_tau_count_weighted(s, 5.0) == 1.0 - kTauFloor);
    }
}
