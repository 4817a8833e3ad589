// Serial reference vs OpenMP kernels on a synthetic workload.

#include <benchmark/benchmark.h>

#include <random>

#include "kexp/clustering.hpp"

using namespace kexp;
using namespace kexp::kernels;

namespace {

struct Workload {
    DataMatrix data;
    TauMatrix tau;
    CentroidSet centers;
    Membership labels;
    std::vector<std::vector<std::size_t>> members;

    Workload(std::size_t n, std::size_t p, std::size_t k)
        : data(n, p), tau(k, p), centers(k, p) {
        std::mt19937_64 rng(17);
        std::normal_distribution<double> d(0.0, 3.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < p; ++j) data(i, j) = d(rng);
        std::uniform_real_distribution<double> t(0.1, 0.9);
        for (double& v : tau.cells) v = t(rng);
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t j = 0; j < p; ++j) centers(c, j) = data(c, j);
        labels = assign_serial(data, centers, tau);
        members = cluster_index(labels, k);
        for (std::size_t c = 0; c < k; ++c)
            if (members[c].empty()) members[c].push_back(c);
    }
};

const Workload& workload() {
    static Workload w(20000, 16, 8);
    return w;
}

void BM_assign_serial(benchmark::State& state) {
    const auto& w = workload();
    for (auto _ : state)
        benchmark::DoNotOptimize(assign_serial(w.data, w.centers, w.tau));
}

void BM_assign_parallel(benchmark::State& state) {
    const auto& w = workload();
    for (auto _ : state)
        benchmark::DoNotOptimize(assign_parallel(w.data, w.centers, w.tau));
}

void BM_update_centroids_serial(benchmark::State& state) {
    const auto& w = workload();
    const LawsConfig laws;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            update_centroids_serial(w.data, w.members, w.tau, laws));
}

void BM_update_centroids_parallel(benchmark::State& state) {
    const auto& w = workload();
    const LawsConfig laws;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            update_centroids_parallel(w.data, w.members, w.tau, laws));
}

void BM_costs_serial(benchmark::State& state) {
    const auto& w = workload();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            point_costs_serial(w.data, w.labels, w.centers, w.tau));
}

void BM_costs_parallel(benchmark::State& state) {
    const auto& w = workload();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            point_costs_parallel(w.data, w.labels, w.centers, w.tau));
}

BENCHMARK(BM_assign_serial);
BENCHMARK(BM_assign_parallel);
BENCHMARK(BM_update_centroids_serial);
BENCHMARK(BM_update_centroids_parallel);
BENCHMARK(BM_costs_serial);
BENCHMARK(BM_costs_parallel);

}  // namespace

BENCHMARK_MAIN();
