#pragma once

#include "kexp/image.hpp"
#include "kexp/types.hpp"

namespace kexp {

struct ContingencyTable {
    std::vector<std::vector<long long>> counts;  // r x s
    std::vector<long long> row_sums;
    std::vector<long long> col_sums;
    long long total = 0;
};

ContingencyTable contingency(const Membership& pred, const Membership& truth);

// Chance-corrected pairwise agreement between two partitions; 1 for
// identical partitions up to relabeling. The degenerate 0/0 case (both
// partitions trivial) is defined as 1.
double adjusted_rand_index(const Membership& pred, const Membership& truth);

// Mean of (b-a)/max(a,b) over points; singleton-cluster points count 0.
double silhouette(const DataMatrix& data, const Membership& membership);

// Average over clusters of the worst (s_k + s_l) / d(mu_k, mu_l) ratio.
// Throws if two cluster means coincide.
double davies_bouldin(const DataMatrix& data, const Membership& membership);

// Per-channel mean squared error averaged across the three channels.
double mse_image(const RasterImage& original, const RasterImage& approx);

// 10 log10(max^2 / mse). Throws on mse <= 0; a zero MSE means infinite
// fidelity and is reported by callers as a distinguished value.
double psnr(double mse, double max_value = 255.0);

}  // namespace kexp
