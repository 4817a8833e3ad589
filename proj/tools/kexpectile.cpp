// Command-line front end: clustering runs, synthetic benchmarks, image
// segmentation and partition scoring.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kexp/clustering.hpp"
#include "kexp/io.hpp"
#include "kexp/metrics.hpp"
#include "kexp/simgen.hpp"

namespace {

using namespace kexp;

TauSpec parse_tau_spec(const std::string& text) {
    if (text.size() < 3 || text[1] != ':')
        throw error("bad tau spec '" + text +
                    "' (use s:<v>, d:<v,..>, c:<v,..> or m:@file.csv)");
    const char kind = text[0];
    const std::string body = text.substr(2);
    if (kind == 'm') {
        if (body.empty() || body[0] != '@')
            throw error("matrix tau spec must reference a file: m:@file.csv");
        const auto m = read_csv_matrix(body.substr(1));
        TauMatrix tau(m.rows(), m.cols());
        for (std::size_t c = 0; c < m.rows(); ++c)
            for (std::size_t j = 0; j < m.cols(); ++j) tau(c, j) = m(c, j);
        return TauSpec::full(tau);
    }
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= body.size()) {
        const std::size_t pos = body.find(',', start);
        const std::string cell =
            body.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
        try {
            values.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw error("bad tau value '" + cell + "' in spec '" + text + "'");
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    switch (kind) {
        case 's':
            if (values.size() != 1) throw error("scalar tau spec takes one value");
            return TauSpec::scalar(values[0]);
        case 'd': return TauSpec::per_dimension(values);
        case 'c': return TauSpec::per_cluster(values);
        default: throw error("unknown tau spec kind '" + std::string(1, kind) + "'");
    }
}

CentroidSet unscale_centers(const CentroidSet& centers, const ColumnScaling& scaling) {
    CentroidSet out = centers;
    for (std::size_t c = 0; c < out.k; ++c)
        for (std::size_t j = 0; j < out.p; ++j) out(c, j) *= scaling.stds[j];
    return out;
}

void write_centers_csv(const std::string& path, const CentroidSet& centers) {
    DataMatrix m(centers.k, centers.p);
    for (std::size_t c = 0; c < centers.k; ++c)
        for (std::size_t j = 0; j < centers.p; ++j) m(c, j) = centers(c, j);
    write_csv_matrix(path, m);
}

void write_tau_csv(const std::string& path, const TauMatrix& tau) {
    DataMatrix m(tau.k, tau.p);
    for (std::size_t c = 0; c < tau.k; ++c)
        for (std::size_t j = 0; j < tau.p; ++j) m(c, j) = tau(c, j);
    write_csv_matrix(path, m);
}

ClusterResult run_mode(const DataMatrix& data, std::size_t k, const std::string& mode,
                       const std::optional<TauSpec>& tau, const ClusterConfig& cfg) {
    if (mode == "fixed") {
        if (!tau) throw error("--tau is required when --mode fixed");
        return fixed_tau_cluster(data, k, *tau, cfg);
    }
    if (tau) throw error("--tau only applies to --mode fixed");
    if (mode == "kmeans") return kmeans(data, k, cfg);
    if (mode == "adaptive") return adaptive_tau_cluster(data, k, cfg);
    throw error("unknown mode '" + mode + "'");
}

void print_scores(const DataMatrix& data, const ClusterResult& result, std::size_t k) {
    std::printf("objective %.10g\n", result.objective());
    std::printf("iterations %d\n", result.iterations);
    std::printf("converged %s\n", result.converged ? "true" : "false");
    if (!result.converged)
        std::fprintf(stderr, "warning: did not converge within the iteration limit\n");
    if (k >= 2) {
        std::printf("silhouette %.6f\n", silhouette(data, result.membership));
        try {
            std::printf("davies_bouldin %.6f\n", davies_bouldin(data, result.membership));
        } catch (const error&) {
            std::printf("davies_bouldin degenerate\n");
        }
    }
}

int cmd_cluster(const std::string& input, std::size_t k, const std::string& mode,
                const std::string& tau_text, bool scale, const ClusterConfig& cfg,
                const std::string& labels_out, const std::string& centers_out,
                const std::string& tau_out) {
    std::optional<TauSpec> tau;
    if (!tau_text.empty()) tau = parse_tau_spec(tau_text);

    DataMatrix data = read_csv_matrix(input);
    std::optional<ColumnScaling> scaling;
    if (scale) {
        auto [scaled, s] = scale_by_std(data);
        data = std::move(scaled);
        scaling = std::move(s);
    }

    const auto result = run_mode(data, k, mode, tau, cfg);
    write_labels_csv(labels_out, result.membership);
    write_centers_csv(centers_out,
                      scaling ? unscale_centers(result.centroids, *scaling)
                              : result.centroids);
    if (!tau_out.empty()) write_tau_csv(tau_out, result.tau);
    print_scores(data, result, k);
    return 0;
}

int cmd_simulate(const SampleSpec& spec, const std::string& data_out,
                 const std::string& labels_out) {
    const auto ds = generate(spec);
    write_csv_matrix(data_out, ds.data);
    write_labels_csv(labels_out, ds.labels);
    return 0;
}

int cmd_benchmark(SampleSpec spec, int reps, const std::string& algorithms,
                  const std::string& report_path, int jobs) {
    std::vector<std::string> algos;
    {
        std::size_t start = 0;
        while (start <= algorithms.size()) {
            const std::size_t pos = algorithms.find(',', start);
            algos.push_back(algorithms.substr(
                start, pos == std::string::npos ? std::string::npos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
    }
    for (const auto& a : algos)
        if (a != "kexpectile" && a != "kmeans")
            throw error("unknown algorithm '" + a + "'");
    if (reps < 1) throw error("--reps must be positive");

    // ari[algo][rep], filled independently per repetition; the aggregation
    // order is fixed by the repetition index, so any schedule yields the
    // same report.
    std::vector<std::vector<double>> ari(algos.size(), std::vector<double>(reps, 0.0));
    const std::uint64_t base_seed = spec.seed;
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
    for (int rep = 0; rep < reps; ++rep) {
        SampleSpec rep_spec = spec;
        rep_spec.seed = base_seed + static_cast<std::uint64_t>(rep);
        const auto ds = generate(rep_spec);
        ClusterConfig cfg;
        cfg.seed = rep_spec.seed;
        cfg.parallel = jobs == 1;  // avoid nested parallelism
        for (std::size_t a = 0; a < algos.size(); ++a) {
            const auto result = algos[a] == "kmeans"
                                    ? kmeans(ds.data, spec.k, cfg)
                                    : adaptive_tau_cluster(ds.data, spec.k, cfg);
            ari[a][rep] = adjusted_rand_index(result.membership, ds.labels);
        }
    }

    std::FILE* out = std::fopen(report_path.c_str(), "w");
    if (!out) throw error("cannot write '" + report_path + "'");
    std::fprintf(out, "# repetition r uses seed = seed + r\n");
    std::fprintf(out, "family,n,p,k,algorithm,mean_ari_x100,std_ari_x100,reps,seed\n");
    for (std::size_t a = 0; a < algos.size(); ++a) {
        double mean = 0.0;
        for (double v : ari[a]) mean += v * 100.0;
        mean /= reps;
        double ss = 0.0;
        for (double v : ari[a]) ss += (v * 100.0 - mean) * (v * 100.0 - mean);
        const double sd = reps > 1 ? std::sqrt(ss / (reps - 1)) : 0.0;
        std::fprintf(out, "%s,%zu,%zu,%zu,%s,%.4f,%.4f,%d,%llu\n",
                     family_name(spec.family), spec.n, spec.p, spec.k,
                     algos[a].c_str(), mean, sd, reps,
                     static_cast<unsigned long long>(base_seed));
    }
    std::fclose(out);
    return 0;
}

int cmd_segment(const std::string& image_path, std::size_t k, const std::string& mode,
                const std::string& tau_text, const ClusterConfig& cfg,
                const std::string& out_path, int only_cluster, bool metrics) {
    std::optional<TauSpec> tau;
    if (!tau_text.empty()) tau = parse_tau_spec(tau_text);

    const auto image = read_ppm(image_path);
    const auto pixels = image_to_matrix(image);
    const auto result = run_mode(pixels, k, mode, tau, cfg);

    RasterImage segmented = recolor(image, result.membership, result.centroids);
    if (only_cluster >= 0) {
        if (static_cast<std::size_t>(only_cluster) >= k)
            throw error("--only-cluster id out of range");
        for (std::size_t i = 0; i < segmented.pixel_count(); ++i)
            if (result.membership[i] != only_cluster)
                for (std::size_t ch = 0; ch < 3; ++ch) segmented.at(i, ch) = 0;
    }
    write_ppm(out_path, segmented);

    if (metrics) {
        const auto report = [](const char* tag, double mse) {
            std::printf("mse_%s %.6f\n", tag, mse);
            if (mse > 0.0) std::printf("psnr_%s %.6f\n", tag, psnr(mse));
            else std::printf("psnr_%s inf\n", tag);
        };
        report("rgb", mse_image(image, segmented));
        report("gray", mse_image(to_grayscale(image), to_grayscale(segmented)));
    }
    return 0;
}

int cmd_eval(const std::string& pred_path, const std::string& truth_path,
             const std::string& metric) {
    if (metric != "ari") throw error("unknown metric '" + metric + "'");
    const auto pred = read_labels_csv(pred_path);
    const auto truth = read_labels_csv(truth_path);
    std::printf("%.6f\n", adjusted_rand_index(pred, truth));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"K-expectile clustering toolkit"};
    app.require_subcommand(1);

    // cluster
    auto* cluster = app.add_subcommand("cluster", "cluster a CSV matrix");
    std::string input, mode, tau_text, labels_out, centers_out, tau_out, tau_update;
    std::size_t k = 0;
    bool scale = false;
    ClusterConfig cfg;
    cluster->add_option("--input", input)->required();
    cluster->add_option("--k", k)->required();
    cluster->add_option("--mode", mode)
        ->required()
        ->check(CLI::IsMember({"kmeans", "fixed", "adaptive"}));
    cluster->add_option("--tau", tau_text);
    cluster->add_flag("--scale", scale);
    cluster->add_option("--seed", cfg.seed);
    cluster->add_option("--max-iter", cfg.max_iter);
    cluster->add_option("--tol", cfg.tol);
    cluster->add_option("--tau-update", tau_update)
        ->check(CLI::IsMember({"count-weighted", "exact-inverse"}));
    cluster->add_option("--labels-out", labels_out)->required();
    cluster->add_option("--centers-out", centers_out)->required();
    cluster->add_option("--tau-out", tau_out);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "generate a labeled synthetic sample");
    std::string family;
    SampleSpec spec;
    std::string data_out, sim_labels_out;
    simulate->add_option("--family", family)
        ->required()
        ->check(CLI::IsMember({"gaussian", "asymnormal", "beta", "skewt", "f"}));
    simulate->add_option("--n", spec.n)->required();
    simulate->add_option("--p", spec.p)->required();
    simulate->add_option("--kclusters", spec.k)->required();
    simulate->add_option("--seed", spec.seed);
    simulate->add_option("--data-out", data_out)->required();
    simulate->add_option("--labels-out", sim_labels_out)->required();

    // benchmark
    auto* benchmark = app.add_subcommand("benchmark", "score algorithms on a sample family");
    int reps = 50, jobs = 1;
    std::string algorithms = "kexpectile,kmeans", report_path;
    benchmark->add_option("--family", family)
        ->required()
        ->check(CLI::IsMember({"gaussian", "asymnormal", "beta", "skewt", "f"}));
    benchmark->add_option("--n", spec.n)->required();
    benchmark->add_option("--p", spec.p)->required();
    benchmark->add_option("--kclusters", spec.k)->required();
    benchmark->add_option("--reps", reps);
    benchmark->add_option("--algorithms", algorithms);
    benchmark->add_option("--seed", spec.seed);
    benchmark->add_option("--jobs", jobs);
    benchmark->add_option("--report", report_path)->required();

    // segment
    auto* segment = app.add_subcommand("segment", "cluster image pixels and recolor");
    std::string image_path, out_path;
    int only_cluster = -1;
    bool metrics = false;
    segment->add_option("--image", image_path)->required();
    segment->add_option("--k", k)->required();
    segment->add_option("--mode", mode)
        ->required()
        ->check(CLI::IsMember({"kmeans", "fixed", "adaptive"}));
    segment->add_option("--tau", tau_text);
    segment->add_option("--seed", cfg.seed);
    segment->add_option("--tau-update", tau_update)
        ->check(CLI::IsMember({"count-weighted", "exact-inverse"}));
    segment->add_option("--out", out_path)->required();
    segment->add_option("--only-cluster", only_cluster);
    segment->add_flag("--metrics", metrics);

    // eval
    auto* eval = app.add_subcommand("eval", "score a predicted partition");
    std::string pred_path, truth_path, metric = "ari";
    eval->add_option("--pred", pred_path)->required();
    eval->add_option("--truth", truth_path)->required();
    eval->add_option("--metric", metric)->check(CLI::IsMember({"ari"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (tau_update == "exact-inverse")
            cfg.tau_update = kexp::TauUpdateRule::ExactInverse;
        if (!family.empty()) spec.family = kexp::parse_family(family);
        if (cluster->parsed())
            return cmd_cluster(input, k, mode, tau_text, scale, cfg, labels_out,
                               centers_out, tau_out);
        if (simulate->parsed()) return cmd_simulate(spec, data_out, sim_labels_out);
        if (benchmark->parsed())
            return cmd_benchmark(spec, reps, algorithms, report_path, jobs);
        if (segment->parsed())
            return cmd_segment(image_path, k, mode, tau_text, cfg, out_path,
                               only_cluster, metrics);
        if (eval->parsed()) return cmd_eval(pred_path, truth_path, metric);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
