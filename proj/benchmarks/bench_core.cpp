#include <benchmark/benchmark.h>

#include <numbers>
#include <numeric>

#include "lmcx/environment.hpp"
#include "lmcx/exploration.hpp"
#include "lmcx/homology.hpp"
#include "lmcx/placement.hpp"
#include "lmcx/rng.hpp"

using namespace lmcx;

namespace {

OccupancyGrid bench_grid() {
    OccupancyGrid grid(64, 64, 1.0);
    grid.close_boundary();
    for (int j = 24; j < 40; ++j)
        for (int i = 24; i < 40; ++i) grid.set_occupied(i, j);
    return grid;
}

std::vector<LandmarkSite> bench_sites(int count) {
    Rng rng(12);
    const OccupancyGrid grid = bench_grid();
    std::vector<LandmarkSite> sites;
    while (static_cast<int>(sites.size()) < count) {
        const double x = rng.uniform(1.5, 62.5);
        const double y = rng.uniform(1.5, 62.5);
        if (!grid.occupied_at(x, y))
            sites.push_back(LandmarkSite{static_cast<int>(sites.size()), x, y, false});
    }
    return sites;
}

SimplicialComplex bench_complex(int batches) {
    Rng rng(34);
    SimplicialComplex k;
    for (int b = 0; b < batches; ++b) {
        std::vector<LandmarkId> obs;
        const int base = rng.uniform_int(0, 60);
        for (int s = 0; s < 3; ++s) obs.push_back(base + rng.uniform_int(0, 4));
        k.insert_observation(obs);
    }
    return k;
}

void bm_insert_observation(benchmark::State& state) {
    Rng rng(1);
    for (auto _ : state) {
        SimplicialComplex k;
        for (int b = 0; b < state.range(0); ++b) {
            std::vector<LandmarkId> obs;
            const int base = rng.uniform_int(0, 40);
            for (int s = 0; s < 4; ++s) obs.push_back(base + rng.uniform_int(0, 5));
            k.insert_observation(obs);
        }
        benchmark::DoNotOptimize(k.triangles().size());
    }
}
BENCHMARK(bm_insert_observation)->Arg(100)->Arg(1000);

void bm_detect_landmarks(benchmark::State& state) {
    const OccupancyGrid grid = bench_grid();
    const auto sites = bench_sites(static_cast<int>(state.range(0)));
    const SensorFootprint footprint{14.0, 1.2};
    Rng rng(5);
    for (auto _ : state) {
        Pose pose{rng.uniform(2.0, 62.0), rng.uniform(2.0, 62.0),
                  rng.uniform(-std::numbers::pi, std::numbers::pi)};
        if (grid.occupied_at(pose.x, pose.y)) pose = Pose{10.5, 10.5, 0.0};
        benchmark::DoNotOptimize(detect_landmarks(pose, sites, footprint, grid));
    }
}
BENCHMARK(bm_detect_landmarks)->Arg(32)->Arg(96);

void bm_visibility_domain(benchmark::State& state) {
    const ConfigGrid grid{bench_grid(), 8};
    const SensorFootprint footprint{14.0, 1.2};
    const LandmarkSite site{0, 20.5, 20.5, false};
    for (auto _ : state) benchmark::DoNotOptimize(visibility_domain(site, footprint, grid));
}
BENCHMARK(bm_visibility_domain);

void bm_voronoi(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<LandmarkId> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    Graph g(ids);
    Rng rng(7);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < 6.0 / n) g.add_edge(u, v);
    const std::vector<std::vector<LandmarkId>> seeds{{0}, {n / 2}, {n - 1}};
    for (auto _ : state) benchmark::DoNotOptimize(voronoi(g, seeds));
}
BENCHMARK(bm_voronoi)->Arg(100)->Arg(400);

void bm_hungarian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(9);
    CostMatrix cost(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) cost.at(r, c) = rng.uniform(0.0, 100.0);
    for (auto _ : state) benchmark::DoNotOptimize(hungarian(cost));
}
BENCHMARK(bm_hungarian)->Arg(8)->Arg(32)->Arg(64);

void bm_laplacian_flow(benchmark::State& state) {
    const SimplicialComplex k = bench_complex(static_cast<int>(state.range(0)));
    const BoundaryMatrices b = boundary_matrices(k);
    const auto l1 = hodge_laplacian_1(b);
    Rng rng(11);
    Eigen::VectorXd x0(b.edge_index.size());
    for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = rng.normal();
    for (auto _ : state) benchmark::DoNotOptimize(flow_to_kernel(l1, x0));
}
BENCHMARK(bm_laplacian_flow)->Arg(200)->Arg(800);

void bm_generate_arc(benchmark::State& state) {
    const Pose start{10.0, 10.0, 0.7};
    const ShortTermTrajectory stt{12.0, 30.0, +1};
    for (auto _ : state) benchmark::DoNotOptimize(generate_arc(start, stt, 0.25));
}
BENCHMARK(bm_generate_arc);

}  // namespace

BENCHMARK_MAIN();
