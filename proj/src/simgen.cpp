#include "kexp/simgen.hpp"

#include <cmath>
#include <random>

namespace kexp {

namespace {

using Rng = std::mt19937_64;

std::vector<std::size_t> cluster_sizes(std::size_t n, std::size_t k) {
    std::vector<std::size_t> sizes(k, n / k);
    for (std::size_t c = 0; c < n % k; ++c) ++sizes[c];
    return sizes;
}

void check_spec(const SampleSpec& spec, SampleFamily expected) {
    if (spec.family != expected) throw error("sample spec family mismatch");
    if (spec.n == 0 || spec.p == 0 || spec.k == 0 || spec.n < spec.k)
        throw error("invalid sample spec: need n >= k >= 1 and p >= 1");
}

LabeledDataset make_dataset(const SampleSpec& spec) {
    LabeledDataset ds{DataMatrix(spec.n, spec.p), Membership(spec.n, 0), spec};
    const auto sizes = cluster_sizes(spec.n, spec.k);
    std::size_t row = 0;
    for (std::size_t c = 0; c < spec.k; ++c)
        for (std::size_t i = 0; i < sizes[c]; ++i) ds.labels[row++] = static_cast<int>(c);
    return ds;
}

double chi_squared(Rng& rng, double df) {
    return std::gamma_distribution<double>(df / 2.0, 2.0)(rng);
}

double beta_variate(Rng& rng, double a, double b) {
    const double x = std::gamma_distribution<double>(a, 1.0)(rng);
    const double y = std::gamma_distribution<double>(b, 1.0)(rng);
    return x / (x + y);
}

double f_variate(Rng& rng, double d1, double d2) {
    const double num = chi_squared(rng, d1) / d1;
    const double den = chi_squared(rng, d2) / d2;
    return num / den;
}

double noncentral_t(Rng& rng, double df, double nc) {
    const double z = std::normal_distribution<double>(0.0, 1.0)(rng);
    return (z + nc) / std::sqrt(chi_squared(rng, df) / df);
}

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

double asym_normal_transform(double z, double tau, double e_tau) {
    const double st = std::sqrt(tau), sc = std::sqrt(1.0 - tau);
    const double coef = z < 0.0 ? 2.0 * st / ((sc + st) * sc)
                                : 2.0 * sc / ((sc + st) * st);
    return coef * z + e_tau;
}

LabeledDataset gen_gaussian(const SampleSpec& spec) {
    check_spec(spec, SampleFamily::Gaussian);
    Rng rng(spec.seed);
    LabeledDataset ds = make_dataset(spec);

    std::vector<double> mu1(spec.p);
    for (double& m : mu1) m = static_cast<double>(uniform_int(rng, 1, 10));

    std::normal_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double shift = 2.0 * static_cast<double>(ds.labels[i]);
        for (std::size_t j = 0; j < spec.p; ++j)
            ds.data(i, j) = mu1[j] + shift + unit(rng);
    }
    return ds;
}

LabeledDataset gen_asym_normal(const SampleSpec& spec) {
    check_spec(spec, SampleFamily::AsymNormal);
    Rng rng(spec.seed);
    LabeledDataset ds = make_dataset(spec);

    TauMatrix tau(spec.k, spec.p);
    for (double& t : tau.cells) t = std::uniform_real_distribution<double>(0.1, 0.9)(rng);

    std::vector<double> e1(spec.p);
    for (double& e : e1) e = std::uniform_real_distribution<double>(0.0, 10.0)(rng);

    std::normal_distribution<double> noise(0.0, 5.0);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const std::size_t c = static_cast<std::size_t>(ds.labels[i]);
        for (std::size_t j = 0; j < spec.p; ++j) {
            // Alternating-sign shift per dimension, 1-based parity.
            const double sign = (j + 1) % 2 == 0 ? 1.0 : -1.0;
            const double e = e1[j] + 7.0 * sign * static_cast<double>(c);
            ds.data(i, j) = asym_normal_transform(noise(rng), tau(c, j), e);
        }
    }
    return ds;
}

LabeledDataset gen_beta(const SampleSpec& spec) {
    check_spec(spec, SampleFamily::Beta);
    if (spec.k != 3) throw error("beta sample uses exactly 3 clusters");
    Rng rng(spec.seed);
    LabeledDataset ds = make_dataset(spec);

    std::vector<double> a(spec.p), b(spec.p);
    for (std::size_t j = 0; j < spec.p; ++j) {
        a[j] = static_cast<double>(uniform_int(rng, 1, 10));
        b[j] = static_cast<double>(uniform_int(rng, 10, 20));
    }

    for (std::size_t i = 0; i < spec.n; ++i) {
        // 1-based cluster parity: clusters 1 and 3 use Beta(a,b), cluster 2
        // the swapped parameters.
        const bool odd_cluster = (ds.labels[i] + 1) % 2 == 1;
        for (std::size_t j = 0; j < spec.p; ++j)
            ds.data(i, j) = odd_cluster ? beta_variate(rng, a[j], b[j])
                                        : beta_variate(rng, b[j], a[j]);
    }
    return ds;
}

LabeledDataset gen_skewed_t(const SampleSpec& spec) {
    check_spec(spec, SampleFamily::SkewedT);
    if (spec.k != 3) throw error("skewed-t sample uses exactly 3 clusters");
    if (spec.p % 2 != 0) throw error("skewed-t sample needs an even dimension");
    Rng rng(spec.seed);
    LabeledDataset ds = make_dataset(spec);

    constexpr double df = 10.0;
    constexpr double nc[3] = {3.0, -1.5, 2.5};
    constexpr double base_loc[3][2] = {{0.0, 2.0}, {1.0, 0.0}, {0.5, 1.0}};

    // Jittered location per cluster per 2-dimensional block.
    const std::size_t blocks = spec.p / 2;
    std::vector<double> loc(spec.k * spec.p);
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    for (std::size_t c = 0; c < spec.k; ++c)
        for (std::size_t blk = 0; blk < blocks; ++blk)
            for (std::size_t d = 0; d < 2; ++d)
                loc[c * spec.p + blk * 2 + d] = base_loc[c][d] + jitter(rng);

    for (std::size_t i = 0; i < spec.n; ++i) {
        const std::size_t c = static_cast<std::size_t>(ds.labels[i]);
        for (std::size_t j = 0; j < spec.p; ++j)
            ds.data(i, j) = 0.5 * noncentral_t(rng, df, nc[c]) + loc[c * spec.p + j];
    }
    return ds;
}

LabeledDataset gen_f(const SampleSpec& spec) {
    check_spec(spec, SampleFamily::FDist);
    if (spec.k != 3) throw error("f sample uses exactly 3 clusters");
    Rng rng(spec.seed);
    LabeledDataset ds = make_dataset(spec);

    // Per-cluster, per-dimension (d1, d2, shift) triples.
    std::vector<double> d1(spec.k * spec.p), d2(spec.k * spec.p), shift(spec.k * spec.p, 0.0);
    for (std::size_t j = 0; j < spec.p; ++j) {
        const bool odd_dim = (j + 1) % 2 == 1;
        {
            const double a = uniform_int(rng, 51, 60), b = uniform_int(rng, 21, 30);
            const double d = odd_dim ? a : b;
            d1[0 * spec.p + j] = d;
            d2[0 * spec.p + j] = d;
            shift[0 * spec.p + j] = 1.0;
        }
        {
            const double b = uniform_int(rng, 25, 35), a = uniform_int(rng, 5, 15);
            const double d = odd_dim ? b : a;
            d1[1 * spec.p + j] = d;
            d2[1 * spec.p + j] = d;
        }
        {
            const double a = uniform_int(rng, 15, 25), b = uniform_int(rng, 60, 70);
            d1[2 * spec.p + j] = odd_dim ? a : b;
            d2[2 * spec.p + j] = odd_dim ? b : a;
        }
    }

    for (std::size_t i = 0; i < spec.n; ++i) {
        const std::size_t c = static_cast<std::size_t>(ds.labels[i]);
        for (std::size_t j = 0; j < spec.p; ++j) {
            const std::size_t cell = c * spec.p + j;
            ds.data(i, j) = f_variate(rng, d1[cell], d2[cell]) + shift[cell];
        }
    }
    return ds;
}

LabeledDataset generate(const SampleSpec& spec) {
    switch (spec.family) {
        case SampleFamily::Gaussian: return gen_gaussian(spec);
        case SampleFamily::AsymNormal: return gen_asym_normal(spec);
        case SampleFamily::Beta: return gen_beta(spec);
        case SampleFamily::SkewedT: return gen_skewed_t(spec);
        case SampleFamily::FDist: return gen_f(spec);
    }
    throw error("unknown sample family");
}

SampleFamily parse_family(const std::string& name) {
    if (name == "gaussian") return SampleFamily::Gaussian;
    if (name == "asymnormal") return SampleFamily::AsymNormal;
    if (name == "beta") return SampleFamily::Beta;
    if (name == "skewt") return SampleFamily::SkewedT;
    if (name == "f") return SampleFamily::FDist;
    throw error("unknown sample family '" + name + "'");
}

const char* family_name(SampleFamily family) {
    switch (family) {
        case SampleFamily::Gaussian: return "gaussian";
        case SampleFamily::AsymNormal: return "asymnormal";
        case SampleFamily::Beta: return "beta";
        case SampleFamily::SkewedT: return "skewt";
        case SampleFamily::FDist: return "f";
    }
    return "?";
}

}  // namespace kexp
