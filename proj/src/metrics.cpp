#include "kexp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kexp {

namespace {

int block_count(const Membership& labels) {
    int k = 0;
    for (int c : labels) {
        if (c < 0) throw error("negative cluster id");
        k = std::max(k, c + 1);
    }
    return k;
}

double choose2(long long n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

double euclid(const double* a, const double* b, std::size_t p) {
    double d = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
        const double r = a[j] - b[j];
        d += r * r;
    }
    return std::sqrt(d);
}

}  // namespace

ContingencyTable contingency(const Membership& pred, const Membership& truth) {
    if (pred.size() != truth.size())
        throw error("partition length mismatch: " + std::to_string(pred.size()) +
                    " vs " + std::to_string(truth.size()));
    if (pred.empty()) throw error("empty partitions");
    const int r = block_count(pred), s = block_count(truth);
    ContingencyTable t;
    t.counts.assign(r, std::vector<long long>(s, 0));
    t.row_sums.assign(r, 0);
    t.col_sums.assign(s, 0);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        ++t.counts[pred[i]][truth[i]];
        ++t.row_sums[pred[i]];
        ++t.col_sums[truth[i]];
        ++t.total;
    }
    return t;
}

double adjusted_rand_index(const Membership& pred, const Membership& truth) {
    const ContingencyTable t = contingency(pred, truth);
    if (t.total < 2) throw error("adjusted rand index needs at least 2 points");

    double sum_cells = 0.0;
    for (const auto& row : t.counts)
        for (long long c : row) sum_cells += choose2(c);
    double sum_rows = 0.0, sum_cols = 0.0;
    for (long long a : t.row_sums) sum_rows += choose2(a);
    for (long long b : t.col_sums) sum_cols += choose2(b);

    const double pairs = choose2(t.total);
    const double expected = sum_rows * sum_cols / pairs;
    const double maximum = 0.5 * (sum_rows + sum_cols) - expected;
    if (maximum == 0.0) return 1.0;  // both partitions trivial and identical
    return (sum_cells - expected) / maximum;
}

double silhouette(const DataMatrix& data, const Membership& membership) {
    if (membership.size() != data.rows()) throw error("membership length mismatch");
    const int k = block_count(membership);
    if (k < 2) throw error("silhouette needs at least 2 clusters");
    std::vector<std::size_t> sizes(k, 0);
    for (int c : membership) ++sizes[c];
    for (std::size_t c = 0; c < sizes.size(); ++c)
        if (sizes[c] == 0) throw error("empty cluster " + std::to_string(c));

    const std::size_t n = data.rows(), p = data.cols();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (sizes[membership[i]] == 1) continue;  // singleton contributes 0
        std::vector<double> mean_dist(k, 0.0);
        for (std::size_t l = 0; l < n; ++l) {
            if (l == i) continue;
            mean_dist[membership[l]] += euclid(data.row_ptr(i), data.row_ptr(l), p);
        }
        const int own = membership[i];
        const double a = mean_dist[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c)
            if (c != own)
                b = std::min(b, mean_dist[c] / static_cast<double>(sizes[c]));
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

double davies_bouldin(const DataMatrix& data, const Membership& membership) {
    if (membership.size() != data.rows()) throw error("membership length mismatch");
    const int k = block_count(membership);
    if (k < 2) throw error("davies-bouldin needs at least 2 clusters");
    const std::size_t p = data.cols();

    std::vector<std::size_t> sizes(k, 0);
    for (int c : membership) ++sizes[c];
    for (std::size_t c = 0; c < sizes.size(); ++c)
        if (sizes[c] == 0) throw error("empty cluster " + std::to_string(c));

    std::vector<std::vector<double>> means(k, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < data.rows(); ++i)
        for (std::size_t j = 0; j < p; ++j)
            means[membership[i]][j] += data(i, j);
    for (int c = 0; c < k; ++c)
        for (std::size_t j = 0; j < p; ++j)
            means[c][j] /= static_cast<double>(sizes[c]);

    std::vector<double> spread(k, 0.0);
    for (std::size_t i = 0; i < data.rows(); ++i)
        spread[membership[i]] +=
            euclid(data.row_ptr(i), means[membership[i]].data(), p);
    for (int c = 0; c < k; ++c) spread[c] /= static_cast<double>(sizes[c]);

    double total = 0.0;
    for (int c = 0; c < k; ++c) {
        double worst = 0.0;
        for (int l = 0; l < k; ++l) {
            if (l == c) continue;
            const double sep = euclid(means[c].data(), means[l].data(), p);
            if (sep == 0.0)
                throw error("coincident cluster means: degenerate partition");
            worst = std::max(worst, (spread[c] + spread[l]) / sep);
        }
        total += worst;
    }
    return total / static_cast<double>(k);
}

double mse_image(const RasterImage& original, const RasterImage& approx) {
    if (original.width != approx.width || original.height != approx.height)
        throw error("image dimension mismatch");
    const std::size_t n = original.pixel_count();
    double mse = 0.0;
    for (std::size_t ch = 0; ch < 3; ++ch) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = static_cast<double>(original.at(i, ch)) -
                             static_cast<double>(approx.at(i, ch));
            acc += d * d;
        }
        mse += acc / static_cast<double>(n);
    }
    return mse / 3.0;
}

double psnr(double mse, double max_value) {
    if (!(mse > 0.0)) throw error("psnr undefined for zero mse");
    if (!(max_value > 0.0)) throw error("max_value must be positive");
    return 10.0 * std::log10(max_value * max_value / mse);
}

}  // namespace kexp
