#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kexp {

// Thrown for any violated precondition or malformed input.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Asymmetry level in the open interval (0,1).
class AsymmetryLevel {
public:
    explicit AsymmetryLevel(double v) : value_(v) {
        if (!(v > 0.0 && v < 1.0))
            throw error("asymmetry level must lie strictly inside (0,1), got " +
                        std::to_string(v));
    }
    double value() const { return value_; }

private:
    double value_;
};

// Row-major n x p observation matrix. All entries finite.
class DataMatrix {
public:
    DataMatrix(std::size_t n, std::size_t p, double fill = 0.0)
        : n_(n), p_(p), cells_(n * p, fill) {
        if (n == 0 || p == 0) throw error("data matrix must be at least 1x1");
    }

    static DataMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        if (rows.empty()) throw error("data matrix must have at least one row");
        DataMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.p_)
                throw error("ragged data: row " + std::to_string(i + 1) +
                            " has " + std::to_string(rows[i].size()) +
                            " columns, expected " + std::to_string(m.p_));
            for (std::size_t j = 0; j < m.p_; ++j) m(i, j) = rows[i][j];
        }
        m.check_finite();
        return m;
    }

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return p_; }

    double& operator()(std::size_t i, std::size_t j) { return cells_[i * p_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return cells_[i * p_ + j]; }

    const double* row_ptr(std::size_t i) const { return cells_.data() + i * p_; }

    void check_finite() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < p_; ++j)
                if (!std::isfinite((*this)(i, j)))
                    throw error("non-finite entry at row " + std::to_string(i + 1) +
                                ", column " + std::to_string(j + 1));
    }

private:
    std::size_t n_, p_;
    std::vector<double> cells_;
};

// Cluster ids in {0,...,K-1}, one per observation.
using Membership = std::vector<int>;

// K centers of length p each.
struct CentroidSet {
    std::size_t k = 0, p = 0;
    std::vector<double> cells;  // row-major k x p

    CentroidSet() = default;
    CentroidSet(std::size_t k_, std::size_t p_) : k(k_), p(p_), cells(k_ * p_, 0.0) {}

    double& operator()(std::size_t c, std::size_t j) { return cells[c * p + j]; }
    double operator()(std::size_t c, std::size_t j) const { return cells[c * p + j]; }
    const double* row_ptr(std::size_t c) const { return cells.data() + c * p; }
};

// K x p matrix of asymmetry levels.
struct TauMatrix {
    std::size_t k = 0, p = 0;
    std::vector<double> cells;

    TauMatrix() = default;
    TauMatrix(std::size_t k_, std::size_t p_, double fill = 0.5)
        : k(k_), p(p_), cells(k_ * p_, fill) {}

    double& operator()(std::size_t c, std::size_t j) { return cells[c * p + j]; }
    double operator()(std::size_t c, std::size_t j) const { return cells[c * p + j]; }
    const double* row_ptr(std::size_t c) const { return cells.data() + c * p; }
};

// User-facing tau shape: scalar, per-dimension, per-cluster, or full K x p.
struct TauSpec {
    enum class Shape { Scalar, PerDimension, PerCluster, Full };

    Shape shape = Shape::Scalar;
    std::vector<double> values;  // flat; Full is row-major k x p
    std::size_t full_k = 0, full_p = 0;

    static TauSpec scalar(double tau) {
        TauSpec s;
        s.shape = Shape::Scalar;
        s.values = {AsymmetryLevel(tau).value()};
        return s;
    }
    static TauSpec per_dimension(std::vector<double> taus) {
        TauSpec s;
        s.shape = Shape::PerDimension;
        for (double t : taus) AsymmetryLevel{t};
        s.values = std::move(taus);
        return s;
    }
    static TauSpec per_cluster(std::vector<double> taus) {
        TauSpec s;
        s.shape = Shape::PerCluster;
        for (double t : taus) AsymmetryLevel{t};
        s.values = std::move(taus);
        return s;
    }
    static TauSpec full(const TauMatrix& m) {
        TauSpec s;
        s.shape = Shape::Full;
        for (double t : m.cells) AsymmetryLevel{t};
        s.values = m.cells;
        s.full_k = m.k;
        s.full_p = m.p;
        return s;
    }
};

struct ClusterResult {
    Membership membership;
    CentroidSet centroids;
    TauMatrix tau;                       // resolved or learned
    std::vector<double> objective_trace; // one entry per outer iteration
    int iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;

    double objective() const {
        return objective_trace.empty() ? 0.0 : objective_trace.back();
    }
};

}  // namespace kexp
